// SPDX-License-Identifier: Apache-2.0
//
// secran: secure downlink beamforming for mmWave C-RAN with microwave
// multicast fronthaul.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <iosfwd>
#include <string>

#include "secran/analog_bf.hpp"
#include "secran/channel.hpp"
#include "secran/rates.hpp"

namespace secran {

// Text serialization used for golden tests and channel exchange. Format:
// one "vec <name> <index> <length>" header per vector followed by a line of
// real parts and a line of imaginary parts ("%.17g", round-trip exact).
void write_channels(std::ostream& os, const ChannelSet& cs);
ChannelSet read_channels(std::istream& is);

void write_analog_bf(std::ostream& os, const AnalogBeamformer& bf);
AnalogBeamformer read_analog_bf(std::istream& is);

void write_solution(std::ostream& os, const BFSolution& sol);
BFSolution read_solution(std::istream& is);

std::string rate_report_csv_header();
std::string rate_report_csv_row(const RateReport& rep);
std::string rate_report_json(const RateReport& rep);

}  // namespace secran
