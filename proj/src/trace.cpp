#include "bioopt/trace.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <system_error>

#include "bioopt/version.hpp"

namespace bioopt {

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

namespace {

const char* cycle_label(int cycle) {
  switch (cycle) {
    case 0:
      return "bc";
    case 1:
      return "pr";
    default:
      return "-";
  }
}

}  // namespace

void write_trace_csv(std::ostream& out, const RunTrace& trace,
                     const TraceMeta& meta) {
  out << "# bioopt " << kVersion << "\n";
  out << "# seed=" << meta.seed << "\n";
  out << "# config: " << meta.config << "\n";

  out << "generation,best_objective,mean_objective";
  if (meta.real_genes > 0) {
    for (int i = 0; i < meta.real_genes; ++i) out << ",x" << i;
  } else {
    out << ",best_genome_hex";
  }
  if (meta.pa_columns) out << ",L,r,cycle";
  if (!meta.aux_column.empty()) out << "," << meta.aux_column;
  out << "\n";

  for (const auto& rec : trace.records) {
    out << rec.generation << ',' << format_double(rec.best_objective) << ','
        << format_double(rec.mean_objective);
    if (meta.real_genes > 0) {
      for (double g : rec.best_reals) out << ',' << format_double(g);
    } else {
      out << ',' << to_hex(rec.best_bits);
    }
    if (meta.pa_columns) {
      out << ',' << format_double(rec.light) << ',' << format_double(rec.rate)
          << ',' << cycle_label(rec.cycle);
    }
    if (!meta.aux_column.empty()) out << ',' << format_double(rec.aux);
    out << "\n";
  }
}

std::string trace_csv_string(const RunTrace& trace, const TraceMeta& meta) {
  std::ostringstream os;
  write_trace_csv(os, trace, meta);
  return os.str();
}

void write_file_atomic(const std::filesystem::path& path,
                       const std::string& content) {
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw std::runtime_error("cannot open " + tmp.string() +
                               " for writing");
    }
    out << content;
    out.flush();
    if (!out) {
      out.close();
      std::error_code ec;
      std::filesystem::remove(tmp, ec);
      throw std::runtime_error("write failed for " + tmp.string());
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw std::runtime_error("cannot move " + tmp.string() + " into place: " +
                             ec.message());
  }
}

}  // namespace bioopt
