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

// Fixed-format CSV writers: 17 significant digits, '.' separator, '\n' endings.

#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "pdecho/entanglement.hpp"

namespace pdecho::csv {

/// "%.16e", locale independent.
std::string format(double x);

inline constexpr const char* kScanHeader =
    "tau,W_pre_re,W_pre_im,W_echo_re,W_echo_im,comm_pre,comm_echo,neg_pre,neg_echo,E_pre,E_echo,"
    "flag_echo_induced";

void write_scan(std::ostream& os, const ScanResult& scan);

struct SpectralRow {
  double tau;
  double chi;
  double phi;
  Complex w2;
  std::optional<Complex> w2_gaussian;
};

/// tau,chi,phi,W2_re,W2_im[,W2_gauss_re,W2_gauss_im]
void write_spectral(std::ostream& os, const std::vector<SpectralRow>& rows, bool gaussian);

}  // namespace pdecho::csv
