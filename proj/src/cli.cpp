#include "fermat/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "fermat/errors.hpp"
#include "fermat/exact3.hpp"
#include "fermat/oracle.hpp"
#include "fermat/subdiff.hpp"

namespace fermat::cli {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  for (;;) {
    const std::size_t pos = line.find(sep, start);
    fields.push_back(trim(line.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return fields;
}

std::optional<double> to_double(std::string_view s) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
  return v;
}

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

Instance build_instance(std::vector<Point> anchors, std::vector<double> weights) {
  try {
    return Instance(std::move(anchors), std::move(weights));
  } catch (const InvalidArgument& e) {
    throw InputError(e.what());
  }
}

std::string json_string(const std::string& s) { return nlohmann::json(s).dump(); }

std::string json_point(const Point& p) {
  std::string s = "[";
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    if (i) s += ',';
    s += format_real(p(i));
  }
  return s + "]";
}

struct Outcome {
  Point point;
  double value = 0.0;
  std::string status;
  subdiff::Certificate certificate;
  std::size_t iterations = 0;
  std::string algorithm;
  weiszfeld::IterationTrace trace;
  int exit_code = kExitOk;
};

Outcome from_weiszfeld(weiszfeld::SolveResult r) {
  Outcome o;
  o.point = r.solution.point;
  o.value = r.solution.value;
  o.status = weiszfeld::to_string(r.solution.status);
  o.certificate = r.solution.certificate;
  o.iterations = r.solution.iterations;
  o.algorithm = "weiszfeld";
  o.trace = std::move(r.trace);
  o.exit_code = r.solution.status == weiszfeld::Status::max_iter ? kExitMaxIter : kExitOk;
  return o;
}

Outcome from_exact3(const Instance& inst, const exact3::TriangleCase& tc, double cert_tol) {
  Outcome o;
  o.point = tc.point;
  o.value = objective(inst, tc.point);
  o.status = tc.kind == exact3::CaseKind::collinear ? "collinear-degenerate" : "converged";
  o.certificate = subdiff::certify(inst, tc.point, cert_tol);
  o.algorithm = "exact3";
  o.trace.steps.push_back(
      {0, tc.point, o.value, 0.0, 0.0, snapped_anchor(inst, tc.point), weiszfeld::StepKind::start});
  return o;
}

bool exact3_applicable(const Instance& inst) {
  return inst.size() == 3 && inst.dim() == 2 && inst.uniform_weights();
}

}  // namespace

Instance parse_csv(std::string_view text) {
  std::vector<Point> anchors;
  std::vector<double> weights;
  bool weight_column = false;
  bool first_row = true;
  std::size_t width = 0;
  std::size_t line_no = 0;

  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t end = std::min(text.find('\n', start), text.size());
    const std::string_view line = trim(text.substr(start, end - start));
    start = end + 1;
    ++line_no;
    if (line.empty() || line.front() == '#') continue;

    const auto fields = split(line, ',');
    std::vector<double> values;
    values.reserve(fields.size());
    bool numeric = true;
    for (auto f : fields) {
      auto v = to_double(f);
      if (!v) {
        numeric = false;
        break;
      }
      values.push_back(*v);
    }

    if (first_row) {
      first_row = false;
      width = fields.size();
      if (!numeric) {
        const std::string last = lower(fields.back());
        weight_column = fields.size() >= 2 && (last == "weight" || last == "w");
        continue;
      }
    }
    if (!numeric)
      throw InputError("line " + std::to_string(line_no) + ": non-numeric field");
    if (fields.size() != width)
      throw InputError("line " + std::to_string(line_no) + ": expected " +
                       std::to_string(width) + " columns, got " + std::to_string(fields.size()));
    for (double v : values)
      if (!std::isfinite(v))
        throw InputError("line " + std::to_string(line_no) + ": non-finite value");

    const std::size_t dim = weight_column ? width - 1 : width;
    Point p(static_cast<Eigen::Index>(dim));
    for (std::size_t c = 0; c < dim; ++c) p(static_cast<Eigen::Index>(c)) = values[c];
    anchors.push_back(std::move(p));
    if (weight_column) weights.push_back(values.back());
  }
  if (anchors.empty()) throw InputError("instance file has no anchor rows");
  return build_instance(std::move(anchors), std::move(weights));
}

Instance parse_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("anchors") || !doc["anchors"].is_array())
    throw InputError("JSON instance needs an \"anchors\" array");

  std::vector<Point> anchors;
  for (const auto& row : doc["anchors"]) {
    if (!row.is_array() || row.empty())
      throw InputError("each anchor must be a non-empty array of numbers");
    Point p(static_cast<Eigen::Index>(row.size()));
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (!row[c].is_number()) throw InputError("anchor coordinates must be numbers");
      p(static_cast<Eigen::Index>(c)) = row[c].get<double>();
    }
    anchors.push_back(std::move(p));
  }
  if (anchors.empty()) throw InputError("instance file has no anchors");

  std::vector<double> weights;
  if (doc.contains("weights")) {
    if (!doc["weights"].is_array()) throw InputError("\"weights\" must be an array");
    for (const auto& w : doc["weights"]) {
      if (!w.is_number()) throw InputError("weights must be numbers");
      weights.push_back(w.get<double>());
    }
    if (weights.size() != anchors.size())
      throw InputError("\"weights\" length does not match \"anchors\"");
  }
  return build_instance(std::move(anchors), std::move(weights));
}

Instance load_instance(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  const std::string_view body = trim(text);
  const bool json_ext = path.size() >= 5 && lower(path.substr(path.size() - 5)) == ".json";
  if (json_ext || (!body.empty() && body.front() == '{')) return parse_json(text);
  return parse_csv(text);
}

Point parse_point(std::string_view text) {
  const auto fields = split(trim(text), ',');
  Point p(static_cast<Eigen::Index>(fields.size()));
  for (std::size_t i = 0; i < fields.size(); ++i) {
    auto v = to_double(fields[i]);
    if (!v || !std::isfinite(*v)) throw InputError("bad coordinate in point \"" + std::string(text) + "\"");
    p(static_cast<Eigen::Index>(i)) = *v;
  }
  return p;
}

std::string format_real(double v) {
  if (!std::isfinite(v)) return "null";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_trace_csv(std::ostream& out, const weiszfeld::IterationTrace& trace, std::size_t dim) {
  out << "iter";
  for (std::size_t c = 1; c <= dim; ++c) out << ",x" << c;
  out << ",phi,step_norm\n";
  for (const auto& s : trace.steps) {
    out << s.k;
    for (Eigen::Index c = 0; c < s.x.size(); ++c) out << ',' << format_real(s.x(c));
    out << ',' << format_real(s.phi) << ',' << format_real(s.step_norm) << '\n';
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Fermat-Torricelli / geometric median solver", "fermat-solve"};
  std::string input;
  std::string algorithm = "auto";
  std::string start;
  std::string escape = "nudge";
  std::string trace_path;
  bool verify = false;
  bool quiet = false;
  weiszfeld::SolverConfig cfg;

  app.add_option("--input", input, "Instance file (CSV or JSON)")->required();
  app.add_option("--algorithm", algorithm, "auto | weiszfeld | exact3")
      ->check(CLI::IsMember({"auto", "weiszfeld", "exact3"}));
  app.add_option("--tol", cfg.cert_tol, "Certificate tolerance")->check(CLI::PositiveNumber);
  app.add_option("--step-tol", cfg.step_tol, "Relative step tolerance")
      ->check(CLI::PositiveNumber);
  app.add_option("--max-iter", cfg.max_iter, "Iteration limit")->check(CLI::PositiveNumber);
  app.add_option("--start", start, "Starting point \"x1,...,xn\"");
  app.add_option("--escape", escape, "Vertex-capture policy: nudge | stop")
      ->check(CLI::IsMember({"nudge", "stop"}));
  app.add_option("--trace", trace_path, "Write the iteration trace as CSV");
  app.add_flag("--verify", verify, "Cross-check against the grid oracle");
  app.add_flag("--quiet", quiet, "Suppress diagnostics on stderr");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  }
  cfg.escape_policy =
      escape == "stop" ? weiszfeld::EscapePolicy::certify_and_stop : weiszfeld::EscapePolicy::nudge;

  try {
    const Instance inst = load_instance(input);
    std::optional<Point> x0;
    if (!start.empty()) {
      x0 = parse_point(start);
      if (static_cast<std::size_t>(x0->size()) != inst.dim())
        throw InputError("--start has dimension " + std::to_string(x0->size()) +
                         ", instance dimension is " + std::to_string(inst.dim()));
    }
    if (inst.size() < inst.input_size() && !quiet)
      err << "note: merged " << inst.input_size() - inst.size() << " duplicate anchor(s)\n";

    bool use_exact3 = false;
    if (algorithm == "exact3") {
      if (!exact3_applicable(inst))
        throw InputError("exact3 needs three distinct, equally weighted anchors in the plane");
      use_exact3 = true;
    } else if (algorithm == "auto") {
      use_exact3 = exact3_applicable(inst);
    }

    Outcome result;
    if (use_exact3) {
      try {
        const auto a = inst.anchors();
        result = from_exact3(inst, exact3::solve_exact3(a[0], a[1], a[2]), cfg.cert_tol);
      } catch (const NumericDegeneracy& e) {
        if (algorithm == "exact3") throw InputError(e.what());
        if (!quiet) err << "note: " << e.what() << "; falling back to weiszfeld\n";
        use_exact3 = false;
      }
    }
    if (!use_exact3) result = from_weiszfeld(weiszfeld::solve(inst, x0, cfg));

    if (!trace_path.empty()) {
      std::ofstream tf(trace_path, std::ios::binary);
      if (!tf) throw InputError("cannot write trace file " + trace_path);
      write_trace_csv(tf, result.trace, inst.dim());
    }

    std::string report = "{\"point\":" + json_point(result.point) +
                         ",\"value\":" + format_real(result.value) +
                         ",\"status\":" + json_string(result.status) +
                         ",\"certificate\":{\"kind\":" +
                         json_string(subdiff::to_string(result.certificate.kind)) +
                         ",\"residual\":" + format_real(result.certificate.residual) + "}" +
                         ",\"iterations\":" + std::to_string(result.iterations) +
                         ",\"algorithm\":" + json_string(result.algorithm);
    if (!trace_path.empty()) report += ",\"trace_file\":" + json_string(trace_path);
    if (verify) {
      report += ",\"verify\":{";
      if (inst.dim() <= oracle::kMaxGridDim) {
        const auto grid = oracle::grid_minimize(inst);
        report += "\"oracle_value\":" + format_real(grid.best_value) +
                  ",\"gap\":" + format_real(result.value - grid.best_value) +
                  ",\"bound\":" + format_real(oracle::coverage_bound(inst, grid));
      } else {
        if (!quiet) err << "note: grid oracle skipped for n > " << oracle::kMaxGridDim << '\n';
        report += "\"oracle_value\":null,\"gap\":null,\"bound\":null";
      }
      if (use_exact3) {
        weiszfeld::SolverConfig check_cfg = cfg;
        check_cfg.record_trace = false;
        const auto w = weiszfeld::solve(inst, std::nullopt, check_cfg);
        report += ",\"weiszfeld_value\":" + format_real(w.solution.value) +
                  ",\"weiszfeld_difference\":" + format_real(result.value - w.solution.value);
      }
      report += "}";
    }
    report += "}\n";
    out << report;

    if (result.exit_code == kExitMaxIter && !quiet)
      err << "warning: iteration limit reached before the certificate was met (residual "
          << format_real(result.certificate.residual) << ")\n";
    return result.exit_code;
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  }
}

}  // namespace fermat::cli
