// Copyright 2026 The pdecho Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "pdecho/csv.hpp"

#include <array>
#include <charconv>

namespace pdecho::csv {

std::string format(double x) {
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), x,
                                 std::chars_format::scientific, 16);
  return std::string(buf.data(), res.ptr);
}

void write_scan(std::ostream& os, const ScanResult& scan) {
  os << kScanHeader << '\n';
  const auto opt = [](const std::optional<double>& v) { return v ? format(*v) : std::string(); };
  for (const auto& r : scan.records) {
    os << format(r.tau) << ',' << format(r.w_pre.real()) << ',' << format(r.w_pre.imag()) << ','
       << format(r.w_echo.real()) << ',' << format(r.w_echo.imag()) << ','
       << format(r.verdict_pre.commutator_norm) << ',' << format(r.verdict_echo.commutator_norm)
       << ',' << format(r.negativity_pre) << ',' << format(r.negativity_echo) << ','
       << opt(r.entropy_pre) << ',' << opt(r.entropy_echo) << ',' << (r.echo_induced() ? 1 : 0)
       << '\n';
  }
}

void write_spectral(std::ostream& os, const std::vector<SpectralRow>& rows, bool gaussian) {
  os << "tau,chi,phi,W2_re,W2_im";
  if (gaussian) os << ",W2_gauss_re,W2_gauss_im";
  os << '\n';
  for (const auto& r : rows) {
    os << format(r.tau) << ',' << format(r.chi) << ',' << format(r.phi) << ','
       << format(r.w2.real()) << ',' << format(r.w2.imag());
    if (gaussian) {
      const Complex g = r.w2_gaussian.value_or(Complex{});
      os << ',' << format(g.real()) << ',' << format(g.imag());
    }
    os << '\n';
  }
}

}  // namespace pdecho::csv
