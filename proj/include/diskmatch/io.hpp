// Copyright 2026 the diskmatch authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software distributed under the License is
// distributed on an "AS IS" BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and limitations under the License.

#ifndef DISKMATCH_IO_HPP
#define DISKMATCH_IO_HPP

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "diskmatch/geometry.hpp"

namespace diskmatch {

/// Instance files are plain text: one "cx cy r" triple per line, `#` starts
/// a comment, blank lines are skipped.

inline std::vector<Disk> parse_instance(std::istream& in, const std::string& name = "<stream>") {
    std::vector<Disk> disks;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        double cx, cy, r;
        if (!(ls >> cx)) continue;  // blank or comment-only line
        if (!(ls >> cy >> r)) {
            throw std::runtime_error(name + ":" + std::to_string(lineno) +
                                     ": expected three numbers \"cx cy r\"");
        }
        std::string trailing;
        if (ls >> trailing) {
            throw std::runtime_error(name + ":" + std::to_string(lineno) + ": trailing content \"" +
                                     trailing + "\"");
        }
        if (!(r > 0.0)) {
            throw std::runtime_error(name + ":" + std::to_string(lineno) + ": radius must be positive");
        }
        if (!disk_is_valid(Disk{cx, cy, r})) {
            throw std::runtime_error(name + ":" + std::to_string(lineno) + ": non-finite coordinates");
        }
        disks.push_back(Disk{cx, cy, r});
    }
    return disks;
}

inline std::vector<Disk> load_instance(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open instance file: " + path);
    return parse_instance(in, path);
}

inline void write_instance(std::ostream& out, const std::vector<Disk>& disks) {
    out.precision(17);
    for (const Disk& d : disks) out << d.cx << ' ' << d.cy << ' ' << d.r << '\n';
}

inline void save_instance(const std::vector<Disk>& disks, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    write_instance(out, disks);
    if (!out) throw std::runtime_error("failed writing instance file: " + path);
}

}  // namespace diskmatch

#endif  // DISKMATCH_IO_HPP
