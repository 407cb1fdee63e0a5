#pragma once

#include <cstddef>
#include <string>

#include "gaugekit/bundle.hpp"

namespace gaugekit::corpus {

// Each generator returns a space-file document that load_space accepts.

// n equally spaced points "x<i>" on [lo, hi], euclidean metric.
json interval(std::size_t n, double lo = 0.0, double hi = 1.0);

// n x n grid "p<i>_<j>" at the given spacing with euclidean, taxicab and
// chebyshev metrics; the gauge is generated by euclidean alone.
json grid_plane(std::size_t n, double spacing = 1.0);

// n points "c<k>" at angle 2*pi*k/n on the unit circle, euclidean.
json circle(std::size_t n);

// circle(n) times m heights in [0,1], points "c<k>_<l>", euclidean in R^3.
json cylinder(std::size_t n, std::size_t m);

// n points "d<i>" with discrete and indiscrete metrics; gauge = discrete.
json discrete(std::size_t n);

// Adds the exhaustion chain K_j = {|x| <= step*j} (while proper) to a
// one-dimensional document.
void add_symmetric_exhaustion(json& doc, double step, const std::string& id = "K");

// Adds map `id` from an interval document onto a target interval holding the
// image values: "square" (x^2) or "half" (x/2).
void add_interval_map(json& doc, const std::string& kind, const std::string& id = "f");

}  // namespace gaugekit::corpus
