#include "ssc/rulers.hpp"

#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include "ssc/gf.hpp"

namespace ssc::rulers {

std::string label(const Ruler& r) {
  switch (r.kind) {
    case Kind::bose_chowla:
      return "bose-chowla(" + std::to_string(r.q) + ")";
    case Kind::ula:
      return "ula";
    case Kind::custom:
      return "custom";
  }
  return "custom";
}

Ruler make_ruler(std::vector<std::int64_t> positions, std::int64_t modulus,
                 Kind kind, std::uint64_t q) {
  if (positions.empty())
    throw std::domain_error("ruler: positions must be non-empty");
  if (modulus < 1) throw std::domain_error("ruler: modulus must be >= 1");
  for (std::size_t i = 0; i < positions.size(); ++i) {
    if (positions[i] < 0 || positions[i] >= modulus)
      throw std::domain_error("ruler: position out of range [0, N)");
    if (i > 0 && positions[i] <= positions[i - 1])
      throw std::domain_error("ruler: positions must be strictly ascending");
  }
  return Ruler{std::move(positions), modulus, kind, q};
}

Ruler bose_chowla(std::uint64_t q) {
  const gf::PrimePower pp = gf::prime_power(q);
  const gf::FieldCtx ctx(pp.p, 2 * pp.n);
  const gf::FieldElement g = gf::find_primitive(ctx);

  const std::int64_t n = static_cast<std::int64_t>(q) * static_cast<std::int64_t>(q) - 1;
  std::vector<std::int64_t> positions;
  positions.reserve(q);
  gf::FieldElement cur = g;  // g^i for the current exponent i
  for (std::int64_t i = 1; i <= n - 1; ++i) {
    if (gf::in_subfield(ctx, ctx.sub(cur, g), q))
      positions.push_back(i);
    cur = ctx.mul(cur, g);
  }
  if (positions.size() != q)
    throw std::logic_error("bose_chowla: construction did not yield q positions");
  return Ruler{std::move(positions), n, Kind::bose_chowla, q};
}

Ruler ula(std::int64_t sensors, std::int64_t modulus) {
  if (sensors < 1) throw std::domain_error("ula: sensors must be >= 1");
  if (modulus < sensors)
    throw std::domain_error("ula: modulus must be >= sensors");
  std::vector<std::int64_t> positions(sensors);
  for (std::int64_t i = 0; i < sensors; ++i) positions[i] = i;
  return Ruler{std::move(positions), modulus, Kind::ula, 0};
}

std::int64_t DifferenceMultiset::total() const noexcept {
  std::int64_t t = 0;
  for (const auto& [r, c] : counts) t += c;
  return t;
}

DifferenceMultiset difference_multiset(const Ruler& r) {
  DifferenceMultiset d;
  const std::int64_t n = r.modulus;
  for (std::int64_t a : r.positions)
    for (std::int64_t b : r.positions) {
      if (a == b) continue;
      ++d.counts[((a - b) % n + n) % n];
    }
  return d;
}

VerifyReport verify_perfect_difference(const Ruler& r, std::uint64_t q) {
  const std::int64_t qi = static_cast<std::int64_t>(q);
  if (r.modulus != qi * qi - 1)
    throw std::domain_error("verify_perfect_difference: modulus must be q^2 - 1");
  if (r.positions.size() != q)
    throw std::domain_error("verify_perfect_difference: ruler must have q positions");

  const DifferenceMultiset d = difference_multiset(r);
  // Admissible residues: nonzero, not divisible by q+1.  Their number in
  // [1, N-1] equals q(q-1), the total multiplicity, so checking each
  // residue's expected count against the map settles coverage.
  for (std::int64_t res = 1; res < r.modulus; ++res) {
    const std::int64_t expected = (res % (qi + 1) == 0) ? 0 : 1;
    const auto it = d.counts.find(res);
    const std::int64_t actual = (it == d.counts.end()) ? 0 : it->second;
    if (actual != expected) {
      std::ostringstream os;
      os << "residue " << res << " has multiplicity " << actual
         << ", expected " << expected;
      return VerifyReport{false, res, os.str()};
    }
  }
  if (d.counts.count(0)) {
    return VerifyReport{false, 0, "residue 0 has nonzero multiplicity"};
  }
  std::ostringstream os;
  os << "all " << qi * (qi - 1)
     << " admissible residues are covered exactly once";
  return VerifyReport{true, std::nullopt, os.str()};
}

bool is_golomb(const Ruler& r) {
  std::set<std::int64_t> seen;
  for (std::size_t i = 0; i < r.positions.size(); ++i)
    for (std::size_t j = i + 1; j < r.positions.size(); ++j) {
      if (!seen.insert(r.positions[j] - r.positions[i]).second) return false;
    }
  return true;
}

parse_error::parse_error(const std::string& msg, int line)
    : std::runtime_error("line " + std::to_string(line) + ": " + msg),
      line_(line) {}

namespace {

std::int64_t parse_int(const std::string& tok, int line, const char* what) {
  std::int64_t v = 0;
  const char* first = tok.data();
  const char* last = tok.data() + tok.size();
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc{} || ptr != last)
    throw parse_error(std::string("expected ") + what + ", got '" + tok + "'", line);
  return v;
}

}  // namespace

Ruler parse_ruler(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;

  std::optional<std::int64_t> modulus;
  std::vector<std::int64_t> positions;
  int positions_line = 0;

  while (std::getline(in, line)) {
    ++lineno;
    if (const std::size_t hash = line.find('#'); hash != std::string::npos)
      line.erase(hash);
    std::istringstream toks(line);
    std::string tok;
    std::vector<std::string> fields;
    while (toks >> tok) fields.push_back(tok);
    if (fields.empty()) continue;

    if (!modulus) {
      if (fields.size() != 1 || fields[0].rfind("N=", 0) != 0)
        throw parse_error("expected header 'N=<int>'", lineno);
      modulus = parse_int(fields[0].substr(2), lineno, "modulus");
      continue;
    }
    if (positions_line != 0)
      throw parse_error("unexpected content after positions line", lineno);
    positions_line = lineno;
    for (const std::string& f : fields)
      positions.push_back(parse_int(f, lineno, "integer position"));
  }

  if (!modulus) throw parse_error("missing header 'N=<int>'", lineno);
  if (positions_line == 0) throw parse_error("missing positions line", lineno);
  try {
    return make_ruler(std::move(positions), *modulus);
  } catch (const std::domain_error& e) {
    throw parse_error(e.what(), positions_line);
  }
}

Ruler load_ruler(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open ruler file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_ruler(buf.str());
}

std::string to_text(const Ruler& r) {
  std::ostringstream os;
  os << "N=" << r.modulus << "\n";
  for (std::size_t i = 0; i < r.positions.size(); ++i)
    os << (i ? " " : "") << r.positions[i];
  os << "\n";
  return os.str();
}

}  // namespace ssc::rulers
