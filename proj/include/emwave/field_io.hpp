#pragma once

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "json.hpp"

#include "emwave/grid.hpp"

namespace emwave {

/// Shortest round-trip decimal representation of a double (the format used
/// by every CSV and field dump the toolkit emits).
inline std::string format_double(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  if (res.ec != std::errc{})
    throw std::runtime_error("format_double: conversion failed");
  return std::string(buf, res.ptr);
}

/// Field file layout: one JSON header line (grid metadata, units tag,
/// component count), then one line per value in grid index order
/// ((it*n0 + i)*n1 + j)*n2 + k, components interleaved last, each line
/// "re im" in shortest round-trip decimals.
inline nlohmann::json grid_header(const SpacetimeGrid &g,
                                  const std::string &units, int components) {
  nlohmann::json h;
  h["origin"] = {g.origin[0], g.origin[1], g.origin[2]};
  h["n"] = {g.n[0], g.n[1], g.n[2]};
  h["h"] = g.h;
  h["dt"] = g.dt;
  h["nt"] = g.nt;
  h["t0"] = g.t0;
  h["units"] = units;
  h["components"] = components;
  return h;
}

inline SpacetimeGrid grid_from_header(const nlohmann::json &h) {
  SpacetimeGrid g(Vec3{h.at("origin")[0], h.at("origin")[1],
                       h.at("origin")[2]},
                  {h.at("n")[0].get<std::size_t>(),
                   h.at("n")[1].get<std::size_t>(),
                   h.at("n")[2].get<std::size_t>()},
                  h.at("h").get<double>(), h.at("dt").get<double>(),
                  h.at("nt").get<std::size_t>(), h.at("t0").get<double>());
  return g;
}

inline void write_scalar_field(std::ostream &os, const ScalarField &f,
                               const std::string &units) {
  os << grid_header(f.grid, units, 1).dump() << "\n";
  for (const cplx &v : f.values)
    os << format_double(v.real()) << " " << format_double(v.imag()) << "\n";
}

inline void write_vector_field(std::ostream &os, const VectorField3 &f,
                               const std::string &units) {
  os << grid_header(f.grid, units, 3).dump() << "\n";
  for (std::size_t s = 0; s < f.comp[0].size(); ++s)
    for (int c = 0; c < 3; ++c)
      os << format_double(f.comp[c][s].real()) << " "
         << format_double(f.comp[c][s].imag()) << "\n";
}

namespace detail {
inline cplx read_value_line(std::istream &is, const char *who) {
  std::string line;
  if (!std::getline(is, line))
    throw std::runtime_error(std::string(who) + ": truncated field file");
  std::istringstream ss(line);
  double re = 0, im = 0;
  if (!(ss >> re >> im))
    throw std::runtime_error(std::string(who) + ": malformed value line");
  return {re, im};
}
} // namespace detail

inline ScalarField read_scalar_field(std::istream &is) {
  std::string header;
  if (!std::getline(is, header))
    throw std::runtime_error("read_scalar_field: missing header");
  const nlohmann::json h = nlohmann::json::parse(header);
  if (h.at("components").get<int>() != 1)
    throw std::runtime_error("read_scalar_field: not a scalar field file");
  ScalarField f(grid_from_header(h));
  for (auto &v : f.values) v = detail::read_value_line(is, "read_scalar_field");
  return f;
}

inline VectorField3 read_vector_field(std::istream &is) {
  std::string header;
  if (!std::getline(is, header))
    throw std::runtime_error("read_vector_field: missing header");
  const nlohmann::json h = nlohmann::json::parse(header);
  if (h.at("components").get<int>() != 3)
    throw std::runtime_error("read_vector_field: not a vector field file");
  VectorField3 f(grid_from_header(h));
  for (std::size_t s = 0; s < f.comp[0].size(); ++s)
    for (int c = 0; c < 3; ++c)
      f.comp[c][s] = detail::read_value_line(is, "read_vector_field");
  return f;
}

inline void save_scalar_field(const std::string &path, const ScalarField &f,
                              const std::string &units) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("save_scalar_field: cannot open " + path);
  write_scalar_field(os, f, units);
}

inline void save_vector_field(const std::string &path, const VectorField3 &f,
                              const std::string &units) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("save_vector_field: cannot open " + path);
  write_vector_field(os, f, units);
}

inline ScalarField load_scalar_field(const std::string &path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("load_scalar_field: cannot open " + path);
  return read_scalar_field(is);
}

inline VectorField3 load_vector_field(const std::string &path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("load_vector_field: cannot open " + path);
  return read_vector_field(is);
}

} // namespace emwave
