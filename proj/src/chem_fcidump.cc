#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "qpsim/errors.h"
#include "qpsim/integrals.h"

namespace qpsim {

namespace {

// Extracts "KEY=integer" from namelist header text, ignoring case and spacing.
bool find_int_key(const std::string& header, const std::string& key,
                  int* value) {
  std::string upper;
  upper.reserve(header.size());
  for (char ch : header)
    upper.push_back(std::toupper(static_cast<unsigned char>(ch)));
  size_t pos = 0;
  while ((pos = upper.find(key, pos)) != std::string::npos) {
    size_t i = pos + key.size();
    while (i < upper.size() && std::isspace(static_cast<unsigned char>(upper[i])))
      ++i;
    if (i < upper.size() && upper[i] == '=') {
      ++i;
      while (i < upper.size() &&
             std::isspace(static_cast<unsigned char>(upper[i])))
        ++i;
      size_t j = i;
      if (j < upper.size() && (upper[j] == '+' || upper[j] == '-')) ++j;
      size_t digits = j;
      while (j < upper.size() && std::isdigit(static_cast<unsigned char>(upper[j])))
        ++j;
      if (j > digits) {
        *value = std::stoi(upper.substr(i, j - i));
        return true;
      }
    }
    pos += key.size();
  }
  return false;
}

}  // namespace

void fcidump_write(const IntegralSet& mo, int n_electrons,
                   const std::string& path) {
  if (mo.basis != OrbitalBasis::MO)
    throw std::invalid_argument("fcidump_write expects MO integrals");
  std::FILE* f = std::fopen(path.c_str(), "w");
  if (!f) throw IoError("cannot open for writing: " + path);
  const int n = mo.n_orb;
  std::fprintf(f, "&FCI NORB=%d,NELEC=%d,MS2=0,\n ISYM=1 /\n", n, n_electrons);
  auto pair_index = [](int p, int q) { return p * (p + 1) / 2 + q; };
  for (int p = 0; p < n; ++p)
    for (int q = 0; q <= p; ++q)
      for (int s = 0; s <= p; ++s)
        for (int t = 0; t <= s; ++t) {
          if (pair_index(p, q) < pair_index(s, t)) continue;
          double v = mo.g4(p, q, s, t);
          if (std::abs(v) < 1e-16) continue;
          std::fprintf(f, "%23.16E %3d %3d %3d %3d\n", v, p + 1, q + 1, s + 1,
                       t + 1);
        }
  for (int p = 0; p < n; ++p)
    for (int q = 0; q <= p; ++q) {
      double v = mo.h(p, q);
      if (std::abs(v) < 1e-16) continue;
      std::fprintf(f, "%23.16E %3d %3d %3d %3d\n", v, p + 1, q + 1, 0, 0);
    }
  std::fprintf(f, "%23.16E %3d %3d %3d %3d\n", mo.e_nuc, 0, 0, 0, 0);
  std::fclose(f);
}

FcidumpData fcidump_read(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open FCIDUMP: " + path);

  // Header: everything through the namelist terminator ("/" or "&END").
  std::string header, line;
  bool header_done = false;
  while (!header_done && std::getline(in, line)) {
    header += line + "\n";
    if (line.find('/') != std::string::npos ||
        line.find("&END") != std::string::npos ||
        line.find("&end") != std::string::npos)
      header_done = true;
  }
  if (!header_done)
    throw IoError("FCIDUMP header has no terminator: " + path);
  int norb = 0, nelec = 0, ms2 = 0;
  if (!find_int_key(header, "NORB", &norb) ||
      !find_int_key(header, "NELEC", &nelec))
    throw IoError("FCIDUMP header missing NORB/NELEC: " + path);
  find_int_key(header, "MS2", &ms2);
  if (norb < 1 || norb > 16)
    throw IoError("FCIDUMP NORB out of supported range");

  FcidumpData data;
  data.n_electrons = nelec;
  data.ms2 = ms2;
  data.ints.n_orb = norb;
  data.ints.basis = OrbitalBasis::MO;
  data.ints.h = Eigen::MatrixXd::Zero(norb, norb);
  data.ints.g.assign(size_t(norb) * norb * norb * norb, 0.0);

  while (std::getline(in, line)) {
    std::istringstream ls(line);
    double v;
    int p, q, s, t;
    if (!(ls >> v)) continue;  // blank line
    if (!(ls >> p >> q >> s >> t))
      throw IoError("malformed FCIDUMP line: " + line);
    if (p < 0 || q < 0 || s < 0 || t < 0 || p > norb || q > norb || s > norb ||
        t > norb)
      throw IoError("FCIDUMP index out of range: " + line);
    if (p == 0 && q == 0 && s == 0 && t == 0) {
      data.ints.e_nuc = v;
    } else if (s == 0 && t == 0) {
      if (p == 0 || q == 0)
        throw IoError("FCIDUMP index out of range: " + line);
      data.ints.h(p - 1, q - 1) = v;
      data.ints.h(q - 1, p - 1) = v;
    } else if (p == 0 || q == 0 || s == 0 || t == 0) {
      throw IoError("FCIDUMP index out of range: " + line);
    } else {
      int a = p - 1, b = q - 1, c = s - 1, d = t - 1;
      for (auto [i, j] : {std::pair{a, b}, {b, a}})
        for (auto [k, l] : {std::pair{c, d}, {d, c}}) {
          data.ints.g4(i, j, k, l) = v;
          data.ints.g4(k, l, i, j) = v;
        }
    }
  }
  return data;
}

}  // namespace qpsim
