//! Bit chromosomes and the bidirectional mapping to parameter vectors.
//!
//! A GenomeLayout is an ordered list of fields, each claiming a fixed number
//! of bits of the chromosome. Continuous fields map the field's unsigned
//! integer (most-significant bit first, plain binary) onto
//! [lower, upper] with a (2^w - 1) denominator so both bounds are exactly
//! representable. Discrete-multiple fields decode to
//! step * (integer + index_offset).

#ifndef BIOOPT_ENCODING_HPP
#define BIOOPT_ENCODING_HPP

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "bioopt/random.hpp"

namespace bioopt {

struct LayoutError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct EncodingError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Fixed-length bit string. bits[0] is the most significant bit of the
/// first field. Genetic operators never change the length.
struct Chromosome {
  std::vector<std::uint8_t> bits;  // each element 0 or 1

  Chromosome() = default;
  explicit Chromosome(std::size_t length) : bits(length, 0) {}

  std::size_t size() const { return bits.size(); }
  bool operator==(const Chromosome&) const = default;
};

enum class FieldKind { continuous, discrete_multiple };

struct FieldSpec {
  FieldKind kind = FieldKind::continuous;
  int bit_width = 16;
  double lower = 0.0;   // continuous only
  double upper = 1.0;   // continuous only
  double step = 0.0;    // discrete-multiple only
  long long index_offset = 0;  // discrete-multiple only

  static FieldSpec continuous_field(int bit_width, double lower, double upper);
  static FieldSpec discrete_field(int bit_width, double step,
                                  long long index_offset);

  /// Largest field integer, 2^bit_width - 1.
  std::uint64_t max_level() const;

  /// Parameter value for a given field integer.
  double decode_level(std::uint64_t level) const;

  /// Nearest representable field integer for a value; throws EncodingError
  /// when the value lies outside the representable set.
  std::uint64_t quantize(double value) const;

  double min_value() const { return decode_level(0); }
  double max_value() const { return decode_level(max_level()); }

  void validate() const;
};

struct GenomeLayout {
  std::vector<FieldSpec> fields;

  int total_bits() const;
  void validate() const;

  /// n identical continuous fields, the common case for box-bounded
  /// problems.
  static GenomeLayout uniform_continuous(int dimension, int bit_width,
                                         double lower, double upper);
};

std::vector<double> decode(const Chromosome& chrom, const GenomeLayout& layout);
Chromosome encode(std::span<const double> values, const GenomeLayout& layout);

Chromosome random_chromosome(std::size_t length, RandomSource& src);

/// Hex rendering of the bit string read as a big-endian integer
/// (ceil(length/4) lowercase digits). from_hex is the inverse given the
/// original length.
std::string to_hex(const Chromosome& chrom);
Chromosome from_hex(const std::string& hex, std::size_t length);

}  // namespace bioopt

#endif  // BIOOPT_ENCODING_HPP
