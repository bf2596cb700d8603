// Command line front end: parsing, trace checking, model enumeration,
// translations, closures, bounded equivalence and valuation reports.
//
// Exit codes: 0 success / all checks hold, 1 check failed or counterexample
// found, 2 usage, parse or I/O error, 3 candidate-space cap exceeded.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "mht/formula.hpp"
#include "mht/models.hpp"
#include "mht/parser.hpp"
#include "mht/semantics.hpp"
#include "mht/trace.hpp"
#include "mht/transform.hpp"

namespace {

using json = nlohmann::ordered_json;

struct Options {
  std::string theory_path;
  std::string trace_path;
  std::string format = "text";
  std::string logic = "mht";
  std::string method = "tau";
  std::string alphabet_csv;
  std::string labels_path;
  std::size_t length = 1;
  std::size_t max_length = 3;
  std::size_t at = 0;
  unsigned workers = 1;
  std::uint64_t cap = 1ull << 26;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

mht::Theory load_theory(const std::string& path) {
  return mht::parse_theory(read_file(path));
}

mht::Logic parse_logic(const std::string& s) {
  if (s == "mht") return mht::Logic::MHT;
  if (s == "mtl") return mht::Logic::MTL;
  return mht::Logic::MEL;
}

mht::AlphabetPtr pick_alphabet(const mht::Theory& theory,
                               const std::string& csv) {
  auto base = mht::alphabet(theory);
  if (csv.empty()) return mht::make_alphabet(base);
  std::vector<std::string> names;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) names.push_back(item);
  }
  auto chosen = mht::make_alphabet(names);
  for (const auto& a : base)
    if (!chosen->contains(a))
      throw std::invalid_argument(
          "alphabet override must contain every theory atom; missing '" + a +
          "'");
  return chosen;
}

std::string step_text(const mht::Trace& t, std::size_t k) {
  auto atoms = t.state(k);
  if (atoms.empty()) return "-";
  std::string out;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    if (i) out += ',';
    out += atoms[i];
  }
  return out;
}

std::string trace_inline(const mht::HTTrace& m) {
  std::string out;
  const bool total = mht::is_total(m);
  for (std::size_t k = 0; k < m.length(); ++k) {
    if (k) out += " / ";
    if (!total) {
      out += step_text(m.here(), k);
      out += '|';
    }
    out += step_text(m.there(), k);
  }
  return out;
}

json trace_steps_json(const mht::Trace& t) {
  json steps = json::array();
  for (std::size_t k = 0; k < t.length(); ++k) steps.push_back(t.state(k));
  return steps;
}

json model_json(const mht::HTTrace& m, mht::Logic logic) {
  if (logic == mht::Logic::MHT) {
    json j;
    j["H"] = trace_steps_json(m.here());
    j["T"] = trace_steps_json(m.there());
    return j;
  }
  return trace_steps_json(m.there());
}

int cmd_parse(const Options& opt) {
  auto theory = load_theory(opt.theory_path);
  if (opt.format == "json") {
    json j;
    json fs = json::array();
    for (const auto& f : theory) fs.push_back(mht::print_formula(f));
    j["formulas"] = std::move(fs);
    j["alphabet"] = mht::alphabet(theory);
    std::cout << j.dump(2) << '\n';
  } else {
    std::cout << mht::print_theory(theory);
  }
  return 0;
}

int cmd_check(const Options& opt) {
  auto theory = load_theory(opt.theory_path);
  std::ifstream tf(opt.trace_path);
  if (!tf) throw std::runtime_error("cannot open '" + opt.trace_path + "'");
  auto trace = mht::read_trace(tf);

  // Evaluate over the union alphabet so theory atoms missing from the trace
  // are simply false.
  std::vector<std::string> names = mht::alphabet(theory);
  auto more = trace.alphabet().names();
  names.insert(names.end(), more.begin(), more.end());
  auto alpha = mht::make_alphabet(names);
  auto m = mht::HTTrace(trace.here().reindexed(alpha),
                        trace.there().reindexed(alpha));
  if (opt.at >= m.length())
    throw std::invalid_argument("--at is past the end of the trace");

  bool all = true;
  json results = json::array();
  for (const auto& f : theory) {
    const bool ok = mht::holds(m, opt.at, f);
    all = all && ok;
    if (opt.format == "json") {
      json r;
      r["formula"] = mht::print_formula(f);
      r["holds"] = ok;
      results.push_back(std::move(r));
    } else {
      std::cout << (ok ? "ok    " : "FAIL  ") << mht::print_formula(f) << '\n';
    }
  }
  if (opt.format == "json") {
    json j;
    j["at"] = opt.at;
    j["results"] = std::move(results);
    j["all"] = all;
    std::cout << j.dump(2) << '\n';
  }
  return all ? 0 : 1;
}

int cmd_models(const Options& opt) {
  auto theory = load_theory(opt.theory_path);
  auto alpha = pick_alphabet(theory, opt.alphabet_csv);
  const auto logic = parse_logic(opt.logic);
  mht::EnumOptions eo{opt.workers, opt.cap};
  mht::ModelSet set = logic == mht::Logic::MEL
                          ? mht::mel_models(theory, alpha, opt.length, eo)
                          : mht::enumerate_models(theory, alpha, opt.length,
                                                  logic, eo);
  if (opt.format == "json") {
    json j;
    j["logic"] = mht::to_string(set.logic);
    j["length"] = set.length;
    j["alphabet"] = set.alphabet->names();
    json ms = json::array();
    for (const auto& m : set.traces) ms.push_back(model_json(m, set.logic));
    j["models"] = std::move(ms);
    std::cout << j.dump(2) << '\n';
  } else {
    for (const auto& m : set.traces) std::cout << trace_inline(m) << '\n';
    std::cerr << set.traces.size() << " model(s)\n";
  }
  return 0;
}

int cmd_translate(const Options& opt) {
  auto theory = load_theory(opt.theory_path);
  if (opt.method == "tau") {
    auto out = mht::tau(theory);
    if (opt.format == "json") {
      json j;
      j["method"] = "tau";
      json fs = json::array();
      for (const auto& f : out) fs.push_back(mht::print_formula(f));
      j["theory"] = std::move(fs);
      std::cout << j.dump(2) << '\n';
    } else {
      std::cout << mht::print_theory(out);
    }
    return 0;
  }
  auto result = mht::upsilon(theory);
  if (!opt.labels_path.empty()) {
    std::ofstream lf(opt.labels_path);
    if (!lf) throw std::runtime_error("cannot open '" + opt.labels_path + "'");
    lf << mht::print_label_table(result.labels);
  }
  if (opt.format == "json") {
    json j;
    j["method"] = "upsilon";
    json fs = json::array();
    for (const auto& f : result.theory) fs.push_back(mht::print_formula(f));
    j["theory"] = std::move(fs);
    json labels = json::array();
    for (const auto& e : result.labels.entries()) {
      if (!e.fresh) continue;
      json l;
      l["label"] = e.label;
      l["formula"] = mht::print_formula(e.formula);
      labels.push_back(std::move(l));
    }
    j["labels"] = std::move(labels);
    j["alphabet"] = result.extended_alphabet;
    std::cout << j.dump(2) << '\n';
  } else {
    std::cout << mht::print_theory(result.theory);
    for (const auto& e : result.labels.entries())
      if (e.fresh)
        std::cout << "% " << e.label << '\t' << mht::print_formula(e.formula)
                  << '\n';
  }
  return 0;
}

int cmd_closure(const Options& opt) {
  auto theory = load_theory(opt.theory_path);
  json blocks = json::array();
  for (const auto& f : theory) {
    auto members = mht::closure(f);
    auto labeled = mht::upsilon(f).labels;
    const std::size_t bound = static_cast<std::size_t>(
        2 * mht::max_subindex(f) * static_cast<long long>(mht::size(f)));
    const bool ok = members.size() <= bound;
    if (opt.format == "json") {
      json b;
      b["formula"] = mht::print_formula(f);
      json ms = json::array();
      for (const auto& e : labeled.entries()) {
        json row;
        row["label"] = e.fresh ? e.label : mht::print_formula(e.formula);
        row["formula"] = mht::print_formula(e.formula);
        ms.push_back(std::move(row));
      }
      b["members"] = std::move(ms);
      b["count"] = members.size();
      b["labeled"] = labeled.fresh_count();
      b["bound"] = bound;
      b["within_bound"] = ok;
      blocks.push_back(std::move(b));
    } else {
      std::cout << "% closure of: " << mht::print_formula(f) << '\n';
      for (const auto& e : labeled.entries())
        std::cout << (e.fresh ? e.label : mht::print_formula(e.formula))
                  << '\t' << mht::print_formula(e.formula) << '\n';
      std::cout << "% members: " << members.size()
                << "  labeled: " << labeled.fresh_count()
                << "  bound: " << members.size() << " <= " << bound
                << (ok ? "  ok" : "  VIOLATED") << '\n';
    }
  }
  if (opt.format == "json") std::cout << blocks.dump(2) << '\n';
  return 0;
}

int cmd_equiv(const Options& opt, const std::string& f1_text,
              const std::string& f2_text) {
  auto f1 = mht::parse_formula(f1_text);
  auto f2 = mht::parse_formula(f2_text);
  mht::AlphabetPtr alpha;
  if (opt.alphabet_csv.empty()) {
    auto names = mht::alphabet(f1);
    auto more = mht::alphabet(f2);
    names.insert(names.end(), more.begin(), more.end());
    alpha = mht::make_alphabet(names);
  } else {
    alpha = pick_alphabet({f1, f2}, opt.alphabet_csv);
  }
  const auto logic =
      opt.logic == "mtl" ? mht::Logic::MTL : mht::Logic::MHT;
  mht::EnumOptions eo{opt.workers, opt.cap};
  auto verdict = mht::bounded_equiv(f1, f2, alpha, opt.max_length, logic, eo);
  if (opt.format == "json") {
    json j;
    j["equivalent"] = verdict.valid;
    j["max_length"] = opt.max_length;
    j["logic"] = mht::to_string(logic);
    if (!verdict.valid) {
      json c;
      c["length"] = verdict.counterexample->length();
      c["at"] = verdict.time_point;
      c["H"] = trace_steps_json(verdict.counterexample->here());
      c["T"] = trace_steps_json(verdict.counterexample->there());
      j["counterexample"] = std::move(c);
    } else {
      j["counterexample"] = nullptr;
    }
    std::cout << j.dump(2) << '\n';
  } else if (verdict.valid) {
    std::cout << "equivalent (lengths 1.." << opt.max_length << ", "
              << mht::to_string(logic) << ")\n";
  } else {
    std::cout << "not equivalent: counterexample (length "
              << verdict.counterexample->length() << ", k="
              << verdict.time_point
              << "): " << trace_inline(*verdict.counterexample) << '\n';
  }
  return verdict.valid ? 0 : 1;
}

int cmd_valuate(const Options& opt) {
  auto theory = load_theory(opt.theory_path);
  std::ifstream tf(opt.trace_path);
  if (!tf) throw std::runtime_error("cannot open '" + opt.trace_path + "'");
  auto trace = mht::read_trace(tf);
  std::vector<std::string> names = mht::alphabet(theory);
  auto more = trace.alphabet().names();
  names.insert(names.end(), more.begin(), more.end());
  auto alpha = mht::make_alphabet(names);
  auto m = mht::HTTrace(trace.here().reindexed(alpha),
                        trace.there().reindexed(alpha));

  json results = json::array();
  for (const auto& f : theory) {
    std::vector<int> values;
    for (std::size_t k = 0; k < m.length(); ++k)
      values.push_back(mht::as_int(mht::valuation(m, k, f)));
    if (opt.format == "json") {
      json r;
      r["formula"] = mht::print_formula(f);
      r["values"] = values;
      results.push_back(std::move(r));
    } else {
      std::cout << '[';
      for (std::size_t k = 0; k < values.size(); ++k) {
        if (k) std::cout << ' ';
        std::cout << values[k];
      }
      std::cout << "] " << mht::print_formula(f) << '\n';
    }
  }
  if (opt.format == "json") {
    json j;
    j["results"] = std::move(results);
    std::cout << j.dump(2) << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"metric temporal reasoning over finite here-and-there traces"};
  app.require_subcommand(1);
  Options opt;
  std::string f1_text, f2_text;

  auto add_format = [&](CLI::App* c) {
    c->add_option("--format", opt.format, "output format")
        ->check(CLI::IsMember({"text", "json"}));
  };

  auto* parse = app.add_subcommand("parse", "parse a theory and reprint it");
  parse->add_option("theory", opt.theory_path)->required();
  add_format(parse);

  auto* check = app.add_subcommand("check", "evaluate a theory on a trace");
  check->add_option("theory", opt.theory_path)->required();
  check->add_option("--trace", opt.trace_path)->required();
  check->add_option("--at", opt.at, "time point (default 0)");
  add_format(check);

  auto* models = app.add_subcommand("models", "enumerate models at a length");
  models->add_option("theory", opt.theory_path)->required();
  models->add_option("--length", opt.length)->required();
  models->add_option("--logic", opt.logic)
      ->check(CLI::IsMember({"mht", "mtl", "mel"}));
  models->add_option("--alphabet", opt.alphabet_csv,
                     "comma-separated atoms (superset of the theory's)");
  models->add_option("--workers", opt.workers);
  models->add_option("--cap", opt.cap);
  add_format(models);

  auto* translate = app.add_subcommand("translate", "rewrite a theory");
  translate->add_option("theory", opt.theory_path)->required();
  translate->add_option("--method", opt.method)
      ->check(CLI::IsMember({"tau", "upsilon"}));
  translate->add_option("--labels", opt.labels_path,
                        "also write the label table to a file");
  add_format(translate);

  auto* closure = app.add_subcommand("closure", "closure members and bound");
  closure->add_option("theory", opt.theory_path)->required();
  add_format(closure);

  auto* equiv = app.add_subcommand("equiv", "bounded equivalence check");
  equiv->add_option("formula1", f1_text)->required();
  equiv->add_option("formula2", f2_text)->required();
  equiv->add_option("--max-length", opt.max_length);
  equiv->add_option("--logic", opt.logic)
      ->check(CLI::IsMember({"mht", "mtl"}));
  equiv->add_option("--alphabet", opt.alphabet_csv);
  equiv->add_option("--cap", opt.cap);
  add_format(equiv);

  auto* valuate = app.add_subcommand("valuate", "three-valued report");
  valuate->add_option("theory", opt.theory_path)->required();
  valuate->add_option("--trace", opt.trace_path)->required();
  add_format(valuate);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return 2;
  }

  try {
    if (parse->parsed()) return cmd_parse(opt);
    if (check->parsed()) return cmd_check(opt);
    if (models->parsed()) return cmd_models(opt);
    if (translate->parsed()) return cmd_translate(opt);
    if (closure->parsed()) return cmd_closure(opt);
    if (equiv->parsed()) return cmd_equiv(opt, f1_text, f2_text);
    if (valuate->parsed()) return cmd_valuate(opt);
  } catch (const mht::CapExceeded& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
