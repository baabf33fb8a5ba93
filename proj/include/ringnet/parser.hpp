/*
   Copyright 2026 the ringnet authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#ifndef RINGNET_PARSER_HPP
#define RINGNET_PARSER_HPP

#include <stdexcept>
#include <string>
#include <vector>

#include "ringnet/network.hpp"

namespace ringnet {

struct ParseError : std::runtime_error {
  int line = 0;
  int col = 0;
  ParseError(const std::string& msg, int l, int c) : std::runtime_error(msg), line(l), col(c) {}
};

/// Resolves a ring directive: Z<k>, Z^<k>, enum<k>:<i>, file:<path>, or a
/// product of the named forms joined with 'x' (e.g. Z5xZ3).
RingPtr resolve_ring_directive(const std::string& spec, const std::string& base_dir = ".");

/// One statement per line, '#' comments. See the network DSL grammar in the
/// README. Throws ParseError with line/column on malformed input.
Network parse_network(const std::string& text, const std::string& base_dir = ".");
Network parse_network_file(const std::string& path);

std::string print_network(const Network& net);

/// Linear (control) network over a ring: Z(t+1) = A Z + B U, Y = C Z.
/// Entries are stored as ring labels; residue naming (via the CRT bridge)
/// applies at parse and print time only.
struct LinearNetwork {
  RingPtr ring;
  bool residue_naming = false;
  int n = 0, m = 0, p = 0;
  std::vector<std::vector<int>> A;  // n x n labels
  std::vector<std::vector<int>> B;  // n x m
  std::vector<std::vector<int>> C;  // p x n
  std::string ring_directive;
};

LinearNetwork parse_linear(const std::string& text, const std::string& base_dir = ".");
LinearNetwork parse_linear_file(const std::string& path);

std::string print_linear(const LinearNetwork& lin);

}  // namespace ringnet

#endif
