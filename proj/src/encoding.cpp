#include "bioopt/encoding.hpp"

#include <cmath>
#include <fmt/format.h>

namespace bioopt {

FieldSpec FieldSpec::continuous_field(int bit_width, double lower,
                                      double upper) {
  FieldSpec f;
  f.kind = FieldKind::continuous;
  f.bit_width = bit_width;
  f.lower = lower;
  f.upper = upper;
  f.validate();
  return f;
}

FieldSpec FieldSpec::discrete_field(int bit_width, double step,
                                    long long index_offset) {
  FieldSpec f;
  f.kind = FieldKind::discrete_multiple;
  f.bit_width = bit_width;
  f.step = step;
  f.index_offset = index_offset;
  f.validate();
  return f;
}

void FieldSpec::validate() const {
  if (bit_width < 1 || bit_width > 63) {
    throw LayoutError(
        fmt::format("field bit_width {} outside [1, 63]", bit_width));
  }
  if (kind == FieldKind::continuous) {
    if (!(upper > lower)) {
      throw LayoutError(fmt::format(
          "continuous field requires upper > lower, got [{}, {}]", lower,
          upper));
    }
  } else {
    if (!(step > 0.0)) {
      throw LayoutError(
          fmt::format("discrete-multiple field requires step > 0, got {}",
                      step));
    }
  }
}

std::uint64_t FieldSpec::max_level() const {
  return (std::uint64_t{1} << bit_width) - 1;
}

double FieldSpec::decode_level(std::uint64_t level) const {
  if (kind == FieldKind::continuous) {
    return lower + static_cast<double>(level) * (upper - lower) /
                       static_cast<double>(max_level());
  }
  return step * (static_cast<double>(level) +
                 static_cast<double>(index_offset));
}

std::uint64_t FieldSpec::quantize(double value) const {
  if (kind == FieldKind::continuous) {
    if (value < lower || value > upper) {
      throw EncodingError(fmt::format(
          "value {} outside continuous field range [{}, {}]", value, lower,
          upper));
    }
    const double scaled = (value - lower) / (upper - lower) *
                          static_cast<double>(max_level());
    return static_cast<std::uint64_t>(std::llround(scaled));
  }
  const long long nearest = std::llround(value / step);
  const long long level = nearest - index_offset;
  if (level < 0 || static_cast<std::uint64_t>(level) > max_level()) {
    throw EncodingError(fmt::format(
        "value {} outside discrete field range [{}, {}]", value, min_value(),
        max_value()));
  }
  return static_cast<std::uint64_t>(level);
}

int GenomeLayout::total_bits() const {
  int total = 0;
  for (const auto& f : fields) total += f.bit_width;
  return total;
}

void GenomeLayout::validate() const {
  if (fields.empty()) throw LayoutError("layout has no fields");
  for (const auto& f : fields) f.validate();
}

GenomeLayout GenomeLayout::uniform_continuous(int dimension, int bit_width,
                                              double lower, double upper) {
  GenomeLayout layout;
  layout.fields.reserve(static_cast<std::size_t>(dimension));
  for (int i = 0; i < dimension; ++i) {
    layout.fields.push_back(
        FieldSpec::continuous_field(bit_width, lower, upper));
  }
  return layout;
}

namespace {

std::uint64_t read_field(const Chromosome& chrom, std::size_t offset,
                         int width) {
  std::uint64_t value = 0;
  for (int k = 0; k < width; ++k) {
    value = (value << 1) | chrom.bits[offset + static_cast<std::size_t>(k)];
  }
  return value;
}

void write_field(Chromosome& chrom, std::size_t offset, int width,
                 std::uint64_t value) {
  for (int k = width - 1; k >= 0; --k) {
    chrom.bits[offset + static_cast<std::size_t>(k)] =
        static_cast<std::uint8_t>(value & 1);
    value >>= 1;
  }
}

}  // namespace

std::vector<double> decode(const Chromosome& chrom,
                           const GenomeLayout& layout) {
  layout.validate();
  if (static_cast<int>(chrom.size()) != layout.total_bits()) {
    throw LayoutError(fmt::format(
        "chromosome length {} does not match layout width {}", chrom.size(),
        layout.total_bits()));
  }
  std::vector<double> values;
  values.reserve(layout.fields.size());
  std::size_t offset = 0;
  for (const auto& f : layout.fields) {
    values.push_back(f.decode_level(read_field(chrom, offset, f.bit_width)));
    offset += static_cast<std::size_t>(f.bit_width);
  }
  return values;
}

Chromosome encode(std::span<const double> values, const GenomeLayout& layout) {
  layout.validate();
  if (values.size() != layout.fields.size()) {
    throw LayoutError(fmt::format(
        "value count {} does not match field count {}", values.size(),
        layout.fields.size()));
  }
  Chromosome chrom(static_cast<std::size_t>(layout.total_bits()));
  std::size_t offset = 0;
  for (std::size_t i = 0; i < layout.fields.size(); ++i) {
    const auto& f = layout.fields[i];
    write_field(chrom, offset, f.bit_width, f.quantize(values[i]));
    offset += static_cast<std::size_t>(f.bit_width);
  }
  return chrom;
}

Chromosome random_chromosome(std::size_t length, RandomSource& src) {
  if (length == 0) throw LayoutError("chromosome length must be >= 1");
  Chromosome chrom(length);
  for (auto& b : chrom.bits) {
    b = src.next_unit() < 0.5 ? 0 : 1;
  }
  return chrom;
}

std::string to_hex(const Chromosome& chrom) {
  const std::size_t n = chrom.size();
  const std::size_t digits = (n + 3) / 4;
  std::string out(digits, '0');
  static constexpr char kHex[] = "0123456789abcdef";
  std::vector<int> nibbles(digits, 0);
  for (std::size_t k = 0; k < n; ++k) {
    if (!chrom.bits[k]) continue;
    const std::size_t from_lsb = n - 1 - k;
    nibbles[digits - 1 - from_lsb / 4] |= 1 << (from_lsb % 4);
  }
  for (std::size_t d = 0; d < digits; ++d) out[d] = kHex[nibbles[d]];
  return out;
}

Chromosome from_hex(const std::string& hex, std::size_t length) {
  const std::size_t digits = (length + 3) / 4;
  if (hex.size() != digits) {
    throw EncodingError(fmt::format(
        "hex string length {} does not match {} bits", hex.size(), length));
  }
  Chromosome chrom(length);
  for (std::size_t d = 0; d < digits; ++d) {
    const char c = hex[d];
    int v = 0;
    if (c >= '0' && c <= '9') {
      v = c - '0';
    } else if (c >= 'a' && c <= 'f') {
      v = c - 'a' + 10;
    } else if (c >= 'A' && c <= 'F') {
      v = c - 'A' + 10;
    } else {
      throw EncodingError(fmt::format("invalid hex digit '{}'", c));
    }
    for (int b = 0; b < 4; ++b) {
      const std::size_t from_lsb = (digits - 1 - d) * 4 +
                                   static_cast<std::size_t>(b);
      if (from_lsb >= length) {
        if (v & (1 << b)) {
          throw EncodingError("hex value has bits beyond chromosome length");
        }
        continue;
      }
      chrom.bits[length - 1 - from_lsb] =
          static_cast<std::uint8_t>((v >> b) & 1);
    }
  }
  return chrom;
}

}  // namespace bioopt
