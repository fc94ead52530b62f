#pragma once

// Sensor-position rulers: modular Golomb rulers from the Bose-Chowla
// construction, uniform linear arrays, and user-supplied position sets,
// plus difference-multiset verification and a small text file format.

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ssc::rulers {

enum class Kind { bose_chowla, ula, custom };

// A set of sensor positions viewed modulo `modulus`.
struct Ruler {
  std::vector<std::int64_t> positions;  // strictly ascending, in [0, modulus)
  std::int64_t modulus = 0;
  Kind kind = Kind::custom;
  std::uint64_t q = 0;  // construction parameter when kind == bose_chowla

  std::size_t size() const noexcept { return positions.size(); }
};

// Construction tag: "bose-chowla(q)", "ula", or "custom".
std::string label(const Ruler& r);

// Validates and assembles a ruler: positions non-empty, strictly
// ascending, within [0, modulus).  Throws std::domain_error otherwise.
Ruler make_ruler(std::vector<std::int64_t> positions, std::int64_t modulus,
                 Kind kind = Kind::custom, std::uint64_t q = 0);

// Bose-Chowla ruler for a prime power q: exponents i in [1, q^2 - 2] with
// g^i - g in GF(q), taken in GF(q^2) built on the canonical modulus with
// the first primitive element g.  q positions modulo N = q^2 - 1.
Ruler bose_chowla(std::uint64_t q);

// Uniform linear array: positions 0..sensors-1 modulo `modulus`.
// Requires 1 <= sensors <= modulus.
Ruler ula(std::int64_t sensors, std::int64_t modulus);

// Multiset of ordered pairwise differences (a - b) mod N, a != b.
// Residues with zero multiplicity are omitted; total count M(M-1).
struct DifferenceMultiset {
  std::map<std::int64_t, std::int64_t> counts;
  std::int64_t total() const noexcept;
};

DifferenceMultiset difference_multiset(const Ruler& r);

struct VerifyReport {
  bool ok = false;
  std::optional<std::int64_t> witness;  // first offending residue when !ok
  std::string detail;
};

// Checks the defining property of a Bose-Chowla set: the q(q-1) ordered
// differences cover each nonzero residue not divisible by q+1 exactly
// once.  Requires modulus == q^2 - 1 and size == q (std::domain_error
// otherwise); any ruler of that shape may be tested.
VerifyReport verify_perfect_difference(const Ruler& r, std::uint64_t q);

// Ordinary Golomb property: all pairwise differences, taken as plain
// integers rather than residues, are distinct.
bool is_golomb(const Ruler& r);

// Parse failure for the ruler text format; carries a 1-based line number.
class parse_error : public std::runtime_error {
 public:
  parse_error(const std::string& msg, int line);
  int line() const noexcept { return line_; }

 private:
  int line_;
};

// Text format: first content line "N=<int>", second content line the
// whitespace-separated ascending positions.  '#' starts a comment; blank
// lines are ignored.  Throws parse_error with the offending line number.
Ruler parse_ruler(const std::string& text);

// Reads and parses a ruler file; std::runtime_error when unreadable.
Ruler load_ruler(const std::string& path);

// Serializes in the same text format (two lines, trailing newline).
std::string to_text(const Ruler& r);

}  // namespace ssc::rulers
