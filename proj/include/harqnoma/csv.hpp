// SPDX-License-Identifier: Apache-2.0
//
// harqnoma: outage analysis and power planning for HARQ-CC NOMA downlinks
// Copyright (C) 2026 The harqnoma authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef HARQNOMA_CSV_HPP
#define HARQNOMA_CSV_HPP

#include <ostream>
#include <string>
#include <vector>

namespace harqnoma {

// Shortest decimal that parses back to the same double ("nan", "inf" and
// "-inf" for non-finite values).
std::string format_number(double v);

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    // Header row first, '\n' line endings, no quoting (cells never contain commas).
    void write(std::ostream& out) const;
    std::string str() const;
};

}  // namespace harqnoma

#endif  // HARQNOMA_CSV_HPP
