// specparse.hpp — inline constructor strings for states and spectra, so
// CLI invocations stay one-liners:
//
//   two-level:E=1              uniform-cycle:N=8,eps1=1
//   eigenstate:E=0             big-delta:E=1,eps=1,n=10
//   interval-weighted:N=100,c=0.5[,scale=1]   (or file=spectrum.json)
//   sample:E=4,seed=7,N=16[,eps1=1]           (or file=spectrum.json)
//   file:state.json            (or any bare path)
//
// Spectrum specs: harmonic:N=16,eps1=1 | power-law:N=50,c=0.5[,scale=1] |
// list:0,1,2.5 | file:spectrum.json | bare path.

#pragma once

#include "qsl/spectrum.hpp"
#include "qsl/state.hpp"

#include <cstdint>
#include <string>

namespace qsl {

// `default_seed` feeds sample: specs that omit seed=.
PureState parse_state_spec(const std::string& spec, std::uint64_t default_seed = 0);

Spectrum parse_spectrum_spec(const std::string& spec);

} // namespace qsl
