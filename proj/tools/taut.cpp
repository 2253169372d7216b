#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include "taut/bracket.hpp"
#include "taut/verify.hpp"

using namespace taut;

namespace {

constexpr int kProved = 0;
constexpr int kError = 1;
constexpr int kUnknown = 2;

struct Options {
  std::string format = "bracket";
  int threads = 1;
  int rounds = 0;
  std::size_t max_relations = Budget{}.max_relations;
  std::string report_path;
};

Budget budget_of(const Options& o) {
  Budget b;
  b.rounds = o.rounds;
  if (b.rounds <= 0) {
    const char* env = std::getenv("TAUT_BUDGET");
    b.rounds = env ? std::max(1, std::atoi(env)) : Budget{}.rounds;
  }
  b.max_relations = o.max_relations;
  b.threads = std::max(1, o.threads);
  return b;
}

WeightVector parse_weights(const std::string& text) {
  WeightVector d;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    const int x = std::stoi(item, &used);
    if (used != item.size() || x < 0) throw std::invalid_argument("bad weight '" + item + "'");
    d.push_back(x);
  }
  if (d.empty()) throw std::invalid_argument("empty weight vector");
  return d;
}

std::string weights_text(const WeightVector& d) {
  std::string out;
  for (std::size_t i = 0; i < d.size(); ++i) out += (i ? "," : "") + std::to_string(d[i]);
  return out;
}

std::string render(const Expression& e, const std::string& format) {
  if (format == "latex") return render_latex(e);
  if (format == "json") return expression_to_json(e).dump(2);
  return e.empty() ? "0" : render_bracket(e);
}

std::string read_input(const std::string& path) {
  if (path == "-") {
    std::string text((std::istreambuf_iterator<char>(std::cin)), std::istreambuf_iterator<char>());
    std::string out;
    std::stringstream ss(text);
    for (std::string line; std::getline(ss, line);) out += line.substr(0, line.find('#')) + "\n";
    return out;
  }
  return read_bracket_file(path);
}

class Report {
 public:
  Report(std::string command, const Options& o) : options_(o), start_(std::chrono::steady_clock::now()) {
    json_["schema"] = 1;
    json_["command"] = std::move(command);
    json_["inputs"] = Json::object();
  }
  Json& inputs() { return json_["inputs"]; }
  Json& outcome() { return json_["outcome"]; }

  // Writes the report as JSON to stdout (json format) and/or the report file.
  void finish(const Budget* budget) {
    if (budget)
      json_["budget"] = Json{{"rounds", budget->rounds}, {"max_relations", budget->max_relations},
                             {"threads", budget->threads}};
    json_["timing"] = Json{
        {"seconds", std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count()}};
    if (options_.format == "json") std::cout << json_.dump(2) << "\n";
    if (!options_.report_path.empty()) {
      std::ofstream out(options_.report_path);
      if (!out) throw std::runtime_error("cannot write " + options_.report_path);
      out << json_.dump(2) << "\n";
    }
  }

 private:
  const Options& options_;
  std::chrono::steady_clock::time_point start_;
  Json json_;
};

Json certificate_summary(const ZeroCertificate& c) {
  return Json{{"outcome", to_string(c.outcome)},
              {"rounds", c.rounds_used},
              {"relations_in_combination", c.combination.size()}};
}

int report_verification(const VerifyResult& r, Report& report, const Options& o, const std::string& certificate_path) {
  report.outcome()["proved"] = r.proved();
  report.outcome()["method"] = to_string(r.method);
  report.outcome()["input_terms"] = r.input.size();
  if (r.psi_free) report.outcome()["psi_free_terms"] = r.psi_free->size();
  if (r.integral) report.outcome()["integral"] = rational_to_json(*r.integral);
  if (r.method == VerifyResult::Method::Certificate || !r.proved())
    report.outcome()["certificate"] = certificate_summary(r.certificate);
  if (!certificate_path.empty()) {
    std::ofstream out(certificate_path);
    if (!out) throw std::runtime_error("cannot write " + certificate_path);
    out << certificate_to_json(r.certificate).dump(2) << "\n";
  }
  if (o.format != "json") {
    if (r.proved()) {
      std::cout << "proved: " << to_string(r.method);
      if (r.method == VerifyResult::Method::Certificate)
        std::cout << " (" << r.certificate.combination.size() << " relations, " << r.certificate.rounds_used
                  << " rounds)";
      std::cout << "\n";
    } else if (r.overflow()) {
      std::cout << "unknown: relation budget overflow after " << r.certificate.rounds_used << " rounds\n";
    } else if (r.integral) {
      std::cout << "unknown: top-degree integral is " << r.integral->get_str() << "\n";
    } else {
      std::cout << "unknown: not in the span of the generated relations (" << r.certificate.rounds_used
                << " rounds)\n";
    }
  }
  return r.proved() ? kProved : kUnknown;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tautological class calculator: B classes, psi elimination, WDVV certificates"};
  app.require_subcommand(1);
  Options o;
  app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"bracket", "json", "latex"}));
  app.add_option("--threads", o.threads, "Worker threads for relation generation")->check(CLI::PositiveNumber);
  app.add_option("--budget", o.rounds, "WDVV closure rounds (default: $TAUT_BUDGET or 3)");
  app.add_option("--max-relations", o.max_relations, "Relation cap before reporting overflow");
  app.add_option("--report", o.report_path, "Also write the JSON run report to this file");

  int g = 0, m = 0, n = -1, l = 1;
  std::string d_text, stage = "raw", mode = "psi", input_path, certificate_path, extras_text;

  auto* compute = app.add_subcommand("compute-b", "Print the class B^m_{g,d}");
  compute->add_option("--g", g)->required();
  compute->add_option("--m", m)->required();
  compute->add_option("--d", d_text, "Weights, comma separated")->required();
  compute->add_option("--stage", stage)->check(CLI::IsMember({"raw", "psi-free"}));

  auto* verify = app.add_subcommand("verify", "Prove B^m_{g,d} = 0");
  verify->add_option("g", g)->required();
  verify->add_option("m", m)->required();
  verify->add_option("d", d_text, "Weights, comma separated")->required();
  verify->add_option("--certificate", certificate_path, "Write the certificate as JSON");

  auto* push = app.add_subcommand("check-pushforward", "Check the pushforward identity for B classes");
  push->add_option("--g", g)->required();
  push->add_option("--n", n);
  push->add_option("--m", m)->required();
  push->add_option("--l", l)->check(CLI::PositiveNumber);
  push->add_option("--d", d_text)->required();

  auto* enumerate = app.add_subcommand("enumerate", "List tree shapes");
  enumerate->add_option("--g", g)->required();
  enumerate->add_option("--n", n)->required();
  enumerate->add_option("--m", m)->required();
  enumerate->add_option("--with-extras", extras_text, "Weights d: also list extra-leg assignments");

  auto* reduce = app.add_subcommand("reduce", "Run a pipeline stage on a bracket file");
  reduce->add_option("input", input_path, "Bracket file, or - for stdin")->required();
  reduce->add_option("--mode", mode)->check(CLI::IsMember({"psi", "zero-test", "pair"}));
  reduce->add_option("--certificate", certificate_path, "Write the certificate as JSON (zero-test)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kError;
  }

  try {
    const Budget budget = budget_of(o);

    if (*compute) {
      const WeightVector d = parse_weights(d_text);
      Report report("compute-b", o);
      report.inputs() = Json{{"g", g}, {"m", m}, {"d", d}, {"stage", stage}};
      Expression e = class_B(g, m, d);
      if (stage == "psi-free") {
        if (g > 1) throw std::invalid_argument("--stage psi-free needs genus <= 1");
        e = eliminate_all_psi(e);
      }
      report.outcome()["expression"] = expression_to_json(e);
      if (o.format != "json") std::cout << render(e, o.format) << "\n";
      report.finish(nullptr);
      return kProved;
    }

    if (*verify) {
      const WeightVector d = parse_weights(d_text);
      int total = 0;
      for (int x : d) total += x;
      if (total < 2 * g + m - 1)
        std::cerr << "warning: |d| = " << total << " is below 2g + m - 1 = " << 2 * g + m - 1 << "\n";
      Report report("verify", o);
      report.inputs() = Json{{"g", g}, {"m", m}, {"n", d.size()}, {"d", d}};
      const VerifyResult r = verify_vanishing(g, m, d, budget);
      const int code = report_verification(r, report, o, certificate_path);
      report.finish(&budget);
      return code;
    }

    if (*push) {
      const WeightVector d = parse_weights(d_text);
      if (n >= 0 && n != static_cast<int>(d.size()))
        throw std::invalid_argument("--n does not match the length of --d");
      Report report("check-pushforward", o);
      report.inputs() = Json{{"g", g}, {"n", d.size()}, {"m", m}, {"l", l}, {"d", d}};
      const PushforwardCheck c = check_pushforward(g, m, l, d, budget);
      report.outcome()["equal"] = c.equal;
      report.outcome()["exact"] = !c.needed_certificate;
      report.outcome()["lhs_terms"] = c.lhs.size();
      report.outcome()["rhs_terms"] = c.rhs.size();
      if (c.needed_certificate) report.outcome()["certificate"] = certificate_summary(c.certificate);
      if (o.format != "json")
        std::cout << (c.equal ? "equal" : "not certified") << (c.needed_certificate ? " (modulo WDVV)" : " (exactly)")
                  << ": pi_* B^" << m + l << " has " << c.lhs.size() << " terms\n";
      report.finish(&budget);
      return c.equal ? kProved : kUnknown;
    }

    if (*enumerate) {
      Report report("enumerate", o);
      report.inputs() = Json{{"g", g}, {"n", n}, {"m", m}};
      std::optional<WeightVector> d;
      if (!extras_text.empty()) {
        d = parse_weights(extras_text);
        if (static_cast<int>(d->size()) != n) throw std::invalid_argument("--with-extras needs n weights");
        report.inputs()["d"] = *d;
      }
      const auto shapes = enumerate_shapes(g, n, m);
      Json rows = Json::array();
      int contributing = 0;
      for (std::size_t i = 0; i < shapes.size(); ++i) {
        const auto& s = shapes[i];
        Json row{{"index", i},
                 {"vertices", s.graph().num_vertices()},
                 {"edges", s.graph().num_edges()},
                 {"bracket", render_bracket(s.graph())}};
        std::string line = std::to_string(i) + "  " + render_bracket(s.graph());
        if (d) {
          const auto acc = enumerate_acceptable(s, *d);
          const bool contributes = !class_B_of_shape(s, *d).empty();
          contributing += contributes;
          Json extras = Json::array();
          for (const auto& a : acc) extras.push_back(a.extra);
          row["assignments"] = extras;
          row["contributes"] = contributes;
          line += "  assignments=" + std::to_string(acc.size()) + (contributes ? "  contributes" : "");
        }
        rows.push_back(row);
        if (o.format != "json") std::cout << line << "\n";
      }
      report.outcome()["shapes"] = rows;
      report.outcome()["count"] = shapes.size();
      if (d) report.outcome()["contributing"] = contributing;
      if (o.format != "json") {
        std::cout << shapes.size() << " shapes";
        if (d) std::cout << ", " << contributing << " contributing for d = " << weights_text(*d);
        std::cout << "\n";
      }
      report.finish(nullptr);
      return kProved;
    }

    if (*reduce) {
      const Expression e = parse_bracket(read_input(input_path));
      Report report("reduce", o);
      report.inputs() = Json{{"input", input_path}, {"mode", mode}, {"terms", e.size()}};
      if (mode == "psi") {
        const Expression r = eliminate_all_psi(e);
        report.outcome()["expression"] = expression_to_json(r);
        if (o.format != "json") std::cout << render(r, o.format) << "\n";
        report.finish(nullptr);
        return kProved;
      }
      if (mode == "pair") {
        Json rows = Json::array();
        for (const auto& p : pair_with_psi_monomials(e)) {
          rows.push_back(Json{{"exponents", p.exponents}, {"value", rational_to_json(p.value)}});
          if (o.format != "json") {
            for (std::size_t i = 0; i < p.exponents.size(); ++i)
              std::cout << (i ? " " : "") << e.ambient().labels[i] << "^" << p.exponents[i];
            std::cout << "  " << p.value.get_str() << "\n";
          }
        }
        report.outcome()["pairings"] = rows;
        report.finish(nullptr);
        return kProved;
      }
      const VerifyResult r = verify_expression(e, budget);
      const int code = report_verification(r, report, o, certificate_path);
      report.finish(&budget);
      return code;
    }
  } catch (const BracketParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kError;
  }
  return kError;
}
