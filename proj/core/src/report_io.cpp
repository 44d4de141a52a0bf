#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "relind/errors.hpp"
#include "relind/eval.hpp"

// All report serialization is hand-rolled with fixed key order and fixed
// numeric formatting so that identical reports produce identical bytes.

namespace relind {

namespace {

std::string escape_json(const std::string& s) {
  std::string out;
  out.reserve(s.size() + 2);
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  return out;
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out.is_open()) throw DataError("cannot open for writing: " + path);
  out << content;
  if (!out) throw DataError("write failed: " + path);
}

}  // namespace

std::string report_to_json(const EvaluationReport& report) {
  std::ostringstream out;
  out << "{\n";
  out << "  \"config\": {\n";
  out << "    \"embedding\": \"" << escape_json(report.embedding_id) << "\",\n";
  out << "    \"dataset\": \"" << escape_json(report.dataset_id) << "\",\n";
  out << "    \"model\": \"" << escape_json(report.model) << "\",\n";
  out << "    \"seed\": " << report.seed << ",\n";
  out << "    \"case_fold\": " << (report.case_fold ? "true" : "false") << "\n";
  out << "  },\n";
  out << "  \"macro\": {\n";
  out << "    \"precision\": " << fmt(report.macro_precision) << ",\n";
  out << "    \"recall\": " << fmt(report.macro_recall) << ",\n";
  out << "    \"f1\": " << fmt(report.macro_f1) << ",\n";
  out << "    \"map\": " << fmt(report.macro_map) << ",\n";
  out << "    \"ap_pooled\": " << fmt(report.macro_ap_pooled) << "\n";
  out << "  },\n";
  out << "  \"relations\": [";
  for (std::size_t r = 0; r < report.relations.size(); ++r) {
    const RelationReport& rel = report.relations[r];
    out << (r == 0 ? "\n" : ",\n");
    out << "    {\n";
    out << "      \"name\": \"" << escape_json(rel.name) << "\",\n";
    out << "      \"pairs_used\": " << rel.pairs_used << ",\n";
    out << "      \"pairs_dropped_oov\": " << rel.pairs_dropped_oov << ",\n";
    out << "      \"fold_count\": " << rel.fold_count << ",\n";
    out << "      \"confusion\": {\"tp\": " << rel.confusion.tp
        << ", \"fp\": " << rel.confusion.fp << ", \"fn\": " << rel.confusion.fn
        << ", \"tn\": " << rel.confusion.tn << "},\n";
    out << "      \"precision\": " << fmt(rel.precision) << ",\n";
    out << "      \"recall\": " << fmt(rel.recall) << ",\n";
    out << "      \"f1\": " << fmt(rel.f1) << ",\n";
    out << "      \"map\": " << fmt(rel.map) << ",\n";
    out << "      \"ap_pooled\": " << fmt(rel.ap_pooled) << ",\n";
    out << "      \"mean_threshold\": " << fmt(rel.mean_threshold) << ",\n";
    out << "      \"fold_thresholds\": [";
    for (std::size_t i = 0; i < rel.fold_thresholds.size(); ++i) {
      out << (i == 0 ? "" : ", ") << fmt(rel.fold_thresholds[i]);
    }
    out << "],\n";
    out << "      \"candidate_counts\": {";
    for (std::size_t i = 0; i < rel.candidate_counts.size(); ++i) {
      out << (i == 0 ? "" : ", ") << "\"" << escape_json(rel.candidate_counts[i].first)
          << "\": " << rel.candidate_counts[i].second;
    }
    out << "},\n";
    out << "      \"warnings\": [";
    for (std::size_t i = 0; i < rel.warnings.size(); ++i) {
      out << (i == 0 ? "" : ", ") << "\"" << escape_json(rel.warnings[i]) << "\"";
    }
    out << "]\n";
    out << "    }";
  }
  out << "\n  ],\n";
  out << "  \"skipped\": [";
  for (std::size_t i = 0; i < report.skipped.size(); ++i) {
    out << (i == 0 ? "\n" : ",\n");
    out << "    {\"name\": \"" << escape_json(report.skipped[i].name)
        << "\", \"reason\": \"" << escape_json(report.skipped[i].reason) << "\"}";
  }
  out << (report.skipped.empty() ? "]" : "\n  ]") << "\n";
  out << "}\n";
  return out.str();
}

void write_report_json(const EvaluationReport& report, const std::string& path) {
  write_file(path, report_to_json(report));
}

std::string report_to_tsv(const EvaluationReport& report) {
  std::ostringstream out;
  out << "relation\tpairs_used\tpairs_dropped_oov\tfold_count\tprecision\trecall\tf1\tmap"
         "\tap_pooled\tmean_threshold\n";
  for (const auto& rel : report.relations) {
    out << rel.name << '\t' << rel.pairs_used << '\t' << rel.pairs_dropped_oov << '\t'
        << rel.fold_count << '\t' << fmt(rel.precision) << '\t' << fmt(rel.recall) << '\t'
        << fmt(rel.f1) << '\t' << fmt(rel.map) << '\t' << fmt(rel.ap_pooled) << '\t'
        << fmt(rel.mean_threshold) << '\n';
  }
  out << "MACRO\t-\t-\t-\t" << fmt(report.macro_precision) << '\t'
      << fmt(report.macro_recall) << '\t' << fmt(report.macro_f1) << '\t'
      << fmt(report.macro_map) << '\t' << fmt(report.macro_ap_pooled) << "\t-\n";
  return out.str();
}

void write_report_tsv(const EvaluationReport& report, const std::string& path) {
  write_file(path, report_to_tsv(report));
}

void print_macro_table(const EvaluationReport& report, std::ostream& out) {
  char buf[160];
  std::snprintf(buf, sizeof buf, "%-12s %10s %10s %10s %10s\n", "model", "precision",
                "recall", "f1", "map");
  out << buf;
  std::snprintf(buf, sizeof buf, "%-12s %10.4f %10.4f %10.4f %10.4f\n",
                report.model.c_str(), report.macro_precision, report.macro_recall,
                report.macro_f1, report.macro_map);
  out << buf;
  std::snprintf(buf, sizeof buf, "(%zu relation(s) evaluated, %zu skipped)\n",
                report.relations.size(), report.skipped.size());
  out << buf;
}

}  // namespace relind
