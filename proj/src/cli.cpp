#include "pfa/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include "pfa/analysis.hpp"
#include "pfa/core.hpp"
#include "pfa/io.hpp"
#include "pfa/one_coin.hpp"
#include "pfa/thirds.hpp"
#include "pfa/thread_tree.hpp"
#include "pfa/value.hpp"

namespace pfa {

namespace {

enum class Mode { OneCoin, Thirds, Value };

constexpr int kOk = 0;
constexpr int kCounterexample = 1;
constexpr int kUsage = 2;

/// Input problem that should end the run with exit code 2.
struct InputError {
  std::string message;
};

class Printer {
 public:
  Printer(std::ostream& out, bool kv) : out_(out), kv_(kv) {}

  void field(const std::string& key, const std::string& value) {
    if (kv_)
      out_ << key << '=' << value << '\n';
    else
      out_ << key << ": " << value << '\n';
  }
  /// Only shown in text mode.
  void text(const std::string& line) {
    if (!kv_) out_ << line << '\n';
  }
  bool kv() const { return kv_; }

 private:
  std::ostream& out_;
  bool kv_;
};

std::string yes_no(bool b) { return b ? "true" : "false"; }

Pfa load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError{"cannot open " + path};
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return parse(buf.str());
  } catch (const ParseError& e) {
    throw InputError{path + ":" + e.what()};
  }
}

Pfa load_valid(const std::string& path) {
  Pfa p = load(path);
  auto violations = validate(p);
  if (!violations.empty()) {
    std::string msg = path + ": invalid automaton";
    for (const auto& v : violations) msg += "\n  " + v.message;
    throw InputError{msg};
  }
  return p;
}

Rational parse_lambda(const std::string& text) {
  auto value = parse_rational(text);
  if (!value) throw InputError{"malformed rational '" + text + "'"};
  return *value;
}

struct Options {
  std::string file, word, out_file, lambda = "1", format = "text";
  Mode mode = Mode::OneCoin;
  std::size_t max_len = 4, p = 0, p_max = 5, trials = 50, states = 4, letters = 2;
  std::uint64_t seed = 1;
  bool p_given = false, restrict_image = false;
};

int cmd_validate(const Options& o, Printer& pr) {
  Pfa p = load(o.file);
  auto violations = validate(p);
  pr.field("violations", std::to_string(violations.size()));
  for (std::size_t i = 0; i < violations.size(); ++i) pr.field("violation." + std::to_string(i), violations[i].message);
  if (violations.empty()) {
    pr.field("states", std::to_string(p.num_states()));
    pr.field("letters", std::to_string(p.num_letters()));
    pr.field("simple", yes_no(is_simple(p)));
    pr.field("thirds", yes_no(is_thirds(p)));
    pr.field("probabilistic_transitions", std::to_string(prob_transitions(p).size()));
  }
  return violations.empty() ? kOk : kCounterexample;
}

int cmd_accept(const Options& o, std::ostream& out, Printer& pr) {
  Pfa p = load_valid(o.file);
  auto prob = accept_prob(p, p.word(o.word));
  if (pr.kv()) {
    pr.field("prob", to_string(prob));
    pr.field("decimal", to_decimal(prob));
  } else {
    out << to_string(prob) << "\n~" << to_decimal(prob) << '\n';
  }
  return kOk;
}

int cmd_value(const Options& o, Printer& pr) {
  Pfa p = load_valid(o.file);
  if (o.restrict_image) {
    auto r = build_one_coin(p);
    auto dfa = image_dfa(r);
    const auto bound = o.max_len * (3 * p.num_states() + 1);
    auto est = estimate_value(r.target, bound, &dfa);
    pr.field("best_prob", to_string(est.best_prob));
    pr.field("decimal", to_decimal(est.best_prob));
    pr.field("best_word", r.target.format_word(est.best_word));
    pr.field("source_word", p.format_word(r.morphism.decode(est.best_word).value_or(Word{})));
    pr.field("words_explored", std::to_string(est.words_explored));
    pr.field("length_bound", std::to_string(bound));
    return kOk;
  }
  auto est = estimate_value(p, o.max_len);
  pr.field("best_prob", to_string(est.best_prob));
  pr.field("decimal", to_decimal(est.best_prob));
  pr.field("best_word", p.format_word(est.best_word));
  pr.field("words_explored", std::to_string(est.words_explored));
  pr.field("length_bound", std::to_string(est.length_bound));
  return kOk;
}

int cmd_isolate(const Options& o, Printer& pr) {
  Pfa p = load_valid(o.file);
  const auto lambda = parse_lambda(o.lambda);
  if (lambda < 0 || lambda > 1) throw InputError{"lambda must lie in [0,1]"};
  auto rep = isolation_probe(p, lambda, o.max_len);
  pr.text("semi-test: a zero gap is conclusive, a positive gap only covers words up to the length bound");
  pr.field("lambda", to_string(rep.lambda));
  pr.field("min_gap", to_string(rep.min_gap));
  pr.field("decimal", to_decimal(rep.min_gap));
  pr.field("witness", p.format_word(rep.witness));
  pr.field("words_explored", std::to_string(rep.words_explored));
  pr.field("length_bound", std::to_string(rep.length_bound));
  return kOk;
}

Pfa reduce_to(const Pfa& p, Mode mode, const Rational& lambda) {
  switch (mode) {
    case Mode::OneCoin: return build_one_coin(p).target;
    case Mode::Thirds: return build_thirds(p).target;
    case Mode::Value: return build_value_preserving(thirds_normal_form(p), lambda).target;
  }
  return {};
}

int cmd_reduce(const Options& o, std::ostream& out, Printer& pr) {
  const auto lambda = parse_lambda(o.lambda);
  if (o.mode != Mode::Value && lambda != 1) throw InputError{"--lambda only applies to --mode value"};
  Pfa p = load_valid(o.file);
  const auto text = serialize(reduce_to(p, o.mode, lambda));
  if (o.out_file.empty()) {
    out << text;
    return kOk;
  }
  std::ofstream f(o.out_file);
  if (!f) throw InputError{"cannot write " + o.out_file};
  f << text;
  pr.field("written", o.out_file);
  return kOk;
}

int cmd_encode(const Options& o, std::ostream& out) {
  Pfa p = load_valid(o.file);
  std::string rendered;
  switch (o.mode) {
    case Mode::OneCoin: {
      auto r = build_one_coin(p);
      rendered = r.target.format_word(r.encode(p.word(o.word)));
      break;
    }
    case Mode::Thirds: {
      auto r = build_thirds(p);
      rendered = r.target.format_word(r.encode(p.word(o.word), o.p_given ? o.p : 2));
      break;
    }
    case Mode::Value: {
      auto r = build_value_preserving(thirds_normal_form(p));
      rendered = r.target.format_word(r.encode_blocks(r.source.word(o.word), o.p_given ? o.p : 1));
      break;
    }
  }
  out << rendered << '\n';
  return kOk;
}

int cmd_verify(const Options& o, Printer& pr) {
  Pfa p = load_valid(o.file);
  switch (o.mode) {
    case Mode::OneCoin: {
      auto r = build_one_coin(p);
      auto rep = verify_one_coin(r, o.max_len);
      const bool single = prob_transitions(r.target).size() == 1;
      pr.field("verified", yes_no(rep.verified && single));
      pr.field("words", std::to_string(rep.words_checked));
      pr.field("probabilistic_transitions", std::to_string(prob_transitions(r.target).size()));
      if (rep.counterexample) {
        pr.field("counterexample", p.format_word(*rep.counterexample));
        pr.field("source_prob", to_string(rep.source_prob));
        pr.field("target_prob", to_string(rep.target_prob));
      }
      return rep.verified && single ? kOk : kCounterexample;
    }
    case Mode::Thirds: {
      auto r = build_thirds(p);
      std::size_t words = 0;
      for (const auto& w : all_words(p.num_letters(), o.max_len)) {
        ++words;
        auto rep = verify_thirds(r, w, o.p_max);
        if (!rep.ok) {
          pr.field("verified", "false");
          pr.field("counterexample", p.format_word(w));
          pr.field("monotone", yes_no(rep.monotone));
          pr.field("bounded", yes_no(rep.bounded));
          pr.field("lower_bound", yes_no(rep.lower_bound));
          return kCounterexample;
        }
      }
      pr.field("verified", yes_no(is_thirds(r.target)));
      pr.field("words", std::to_string(words));
      pr.field("rounds", std::to_string(o.p_max));
      return is_thirds(r.target) ? kOk : kCounterexample;
    }
    case Mode::Value: {
      auto r = build_value_preserving(thirds_normal_form(p));
      std::size_t words = 0;
      for (const auto& w : all_words(r.source.num_letters(), o.max_len)) {
        ++words;
        auto rep = verify_value_preserving(r, w, o.p_max);
        if (!rep.ok) {
          pr.field("verified", "false");
          pr.field("counterexample", r.source.format_word(w));
          pr.field("closed_form", yes_no(rep.closed_form));
          pr.field("monotone", yes_no(rep.monotone));
          pr.field("bounded", yes_no(rep.bounded));
          return kCounterexample;
        }
      }
      auto key = key_observation_check(r, std::max<std::size_t>(o.max_len, 1), 100, o.seed);
      const bool single = prob_transitions(r.target).size() == 1;
      pr.field("verified", yes_no(key.ok && single));
      pr.field("words", std::to_string(words));
      pr.field("repetitions", std::to_string(o.p_max));
      pr.field("single_block_max", to_string(key.max_prob));
      if (key.violation) pr.field("single_block_violation", r.target.format_word(*key.violation));
      return key.ok && single ? kOk : kCounterexample;
    }
  }
  return kUsage;
}

int cmd_sweep(const Options& o, Printer& pr) {
  SweepConfig cfg;
  cfg.trials = o.trials;
  cfg.max_states = o.states;
  cfg.max_letters = o.letters;
  cfg.max_len = o.max_len;
  cfg.p_max = o.p_max;
  cfg.seed = o.seed;
  auto rep = equivalence_sweep(cfg);
  for (const auto& t : rep.trials) {
    const std::string key = "trial." + std::to_string(t.index);
    std::string value = (t.failure.empty() ? "pass" : "fail") + std::string(" states=") + std::to_string(t.states) +
                        " letters=" + std::to_string(t.letters);
    if (!t.failure.empty()) value += " " + t.failure;
    pr.field(key, value);
  }
  pr.field("passed", std::to_string(rep.passed()));
  pr.field("trials", std::to_string(rep.trials.size()));
  return rep.all_passed() ? kOk : kCounterexample;
}

int cmd_dot(const Options& o, std::ostream& out) {
  Pfa p = load_valid(o.file);
  out << render_thread_tree(p, p.word(o.word));
  return kOk;
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact toolkit for simple probabilistic finite automata and their one-coin reductions", "pfatool"};
  app.footer(std::string(grammar_help()));
  app.require_subcommand(1);
  Options o;
  app.add_option("--format", o.format, "output format")->check(CLI::IsMember({"text", "kv"}));

  const std::map<std::string, Mode> modes{{"one-coin", Mode::OneCoin}, {"thirds", Mode::Thirds}, {"value", Mode::Value}};
  auto add_file = [&](CLI::App* sub) { sub->add_option("FILE", o.file, "automaton file")->required(); };
  auto add_mode = [&](CLI::App* sub) {
    sub->add_option("--mode", o.mode, "one-coin | thirds | value")
        ->required()
        ->transform(CLI::CheckedTransformer(modes, CLI::ignore_case));
  };

  auto* validate_cmd = app.add_subcommand("validate", "check the automaton invariants");
  add_file(validate_cmd);

  auto* accept_cmd = app.add_subcommand("accept", "exact acceptance probability of a word");
  add_file(accept_cmd);
  accept_cmd->add_option("--word", o.word, "dot-separated word")->required();

  auto* value_cmd = app.add_subcommand("value", "best acceptance probability over bounded-length words");
  add_file(value_cmd);
  value_cmd->add_option("--max-len", o.max_len)->required();
  value_cmd->add_flag("--restrict-image", o.restrict_image,
                      "search the one-coin target over image words of source words up to --max-len");

  auto* isolate_cmd = app.add_subcommand("isolate", "smallest gap to lambda over bounded-length words");
  add_file(isolate_cmd);
  isolate_cmd->add_option("--lambda", o.lambda, "N/D")->required();
  isolate_cmd->add_option("--max-len", o.max_len)->required();

  auto* reduce_cmd = app.add_subcommand("reduce", "build a reduced automaton");
  add_file(reduce_cmd);
  add_mode(reduce_cmd);
  reduce_cmd->add_option("--out", o.out_file, "output file (default stdout)");
  reduce_cmd->add_option("--lambda", o.lambda, "threshold for --mode value (only 1)");

  auto* encode_cmd = app.add_subcommand("encode", "encode a source word for a reduction");
  add_file(encode_cmd);
  add_mode(encode_cmd);
  encode_cmd->add_option("--word", o.word)->required();
  encode_cmd->add_option("--p", o.p, "sharps per letter (thirds) or block repetitions (value)")
      ->each([&](const std::string&) { o.p_given = true; });

  auto* verify_cmd = app.add_subcommand("verify", "check a reduction exhaustively on bounded words");
  add_file(verify_cmd);
  add_mode(verify_cmd);
  verify_cmd->add_option("--max-len", o.max_len)->required();
  verify_cmd->add_option("--p-max", o.p_max, "two-sharp rounds (thirds) or block repetitions (value)");
  verify_cmd->add_option("--seed", o.seed, "seed for single-block perturbations");

  auto* sweep_cmd = app.add_subcommand("sweep", "verify all reductions on random simple automata");
  sweep_cmd->add_option("--trials", o.trials)->required();
  sweep_cmd->add_option("--states", o.states)->required();
  sweep_cmd->add_option("--letters", o.letters)->required();
  sweep_cmd->add_option("--max-len", o.max_len)->required();
  sweep_cmd->add_option("--seed", o.seed)->required();
  sweep_cmd->add_option("--p-max", o.p_max);

  auto* dot_cmd = app.add_subcommand("dot", "DOT drawing of the computation threads on a word");
  add_file(dot_cmd);
  dot_cmd->add_option("--word", o.word)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    err << grammar_help();
    return kUsage;
  }

  Printer pr(out, o.format == "kv");
  try {
    if (*validate_cmd) return cmd_validate(o, pr);
    if (*accept_cmd) return cmd_accept(o, out, pr);
    if (*value_cmd) return cmd_value(o, pr);
    if (*isolate_cmd) return cmd_isolate(o, pr);
    if (*reduce_cmd) return cmd_reduce(o, out, pr);
    if (*encode_cmd) return cmd_encode(o, out);
    if (*verify_cmd) return cmd_verify(o, pr);
    if (*sweep_cmd) return cmd_sweep(o, pr);
    if (*dot_cmd) return cmd_dot(o, out);
  } catch (const InputError& e) {
    err << "error: " << e.message << '\n';
    return kUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace pfa
