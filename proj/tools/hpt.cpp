// hpt: command-line front end (validate, transfer, check, export).

#include "hpt/io.hpp"
#include "hpt/perturbation.hpp"
#include "hpt/transfer.hpp"

#include "CLI11.hpp"

#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>

using namespace hpt;
namespace io = hpt::io;

namespace {

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kParse = 2;

// A semantic failure with a report to print.
struct Failure {
  std::string message;
  io::Json body;
};

void setup_logging() {
  auto logger = spdlog::stderr_color_mt("hpt");
  spdlog::set_default_logger(logger);
  spdlog::set_pattern("[%l] %v");
  spdlog::set_level(spdlog::level::warn);
  if (const char* env = std::getenv("HPT_LOG")) spdlog::set_level(spdlog::level::from_str(env));
}

struct Options {
  std::string file;
  int max_weight = 0;
  bool homology = false;
  bool trivial = false;
  bool stages = false;
  bool pretty = false;
  std::string out;
  std::string what;
};

void emit(const Options& opt, const std::string& text) {
  if (opt.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(opt.out, std::ios::binary);
  if (!f) throw Failure{"cannot write " + opt.out, {}};
  f << text;
}

void log_first_failure(const Report& r) {
  if (const auto f = r.first_failure())
    spdlog::error("first failing identity: {}{} at {}", f->identity,
                  f->stage > 0 ? " (stage " + std::to_string(f->stage) + ")" : std::string(), f->witness);
}

Contraction choose_contraction(const io::Problem& p, const Options& opt) {
  if (opt.trivial) return trivial_contraction(p.g.complex());
  if (opt.homology) return build_homology_contraction(p.g.complex());
  if (!p.contraction) throw Failure{"no contraction: the file has none and neither --homology nor --trivial-contraction was given", {}};
  Report r = validate_contraction(*p.contraction);
  if (!r.ok()) log_first_failure(r);
  if (!r.ok()) throw Failure{"invalid contraction", io::Json{{"input", io::report_to_json(r)}}};
  return Contraction(*p.contraction);
}

int cmd_validate(const Options& opt) {
  const io::Problem p = io::load_problem(opt.file);
  Report r = validate_dgla(p.g);
  if (p.contraction) {
    Report small = validate_chain_complex(p.contraction->small);
    for (auto c : small.checks()) {
      c.identity = "small " + c.identity;
      r.add(std::move(c));
    }
    r.append(validate_contraction(*p.contraction));
  }
  log_first_failure(r);
  emit(opt, opt.pretty ? io::pretty_report(r, "validate " + opt.file) : io::dump(io::report_to_json(r)));
  return r.ok() ? kOk : kFailed;
}

TransferState transfer_state(const Options& opt, const io::Problem& p) {
  const Report pre = validate_prebracket(p.g);
  if (!pre.ok()) {
    log_first_failure(pre);
    throw Failure{"invalid bracket", io::Json{{"input", io::report_to_json(pre)}}};
  }
  Contraction c = choose_contraction(p, opt);
  const auto t0 = std::chrono::steady_clock::now();
  TransferState s = run_transfer(p.g, std::move(c), opt.max_weight);
  spdlog::info("transfer to weight {} in {:.3f} s", opt.max_weight,
               std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
  return s;
}

int cmd_transfer(const Options& opt) {
  const io::Problem p = io::load_problem(opt.file);
  const TransferState s = transfer_state(opt, p);
  const LInftyStructure l = brackets(s);
  const io::Json out{{"maxWeight", opt.max_weight},
                     {"linf", io::linf_to_json(l)},
                     {"tau", io::tau_to_json(s)},
                     {"coderivation", io::coderivation_to_json(s)},
                     {"verification", io::report_to_json(verify_brackets(l))}};
  emit(opt, io::dump(out));
  return kOk;
}

int cmd_check(const Options& opt) {
  const io::Problem p = io::load_problem(opt.file);
  const TransferState s = transfer_state(opt, p);
  Report main;
  for (int a = 1; a < opt.max_weight; ++a) main.append(verify_stage(s, a));
  Report extra;
  if (opt.stages) {
    extra.append(verify_low_stages(s));
    extra.append(verify_transfer(s));
  }
  try {
    const auto t0 = std::chrono::steady_clock::now();
    const FinalContraction f = assemble_final_contraction(s);
    spdlog::info("final contraction in {:.3f} s",
                 std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
    main.append(verify_final_contraction(f));
    if (opt.stages) extra.append(verify_final_supplementary(f));
  } catch (const ValidationError& e) {
    spdlog::warn("final contraction not built: {}", e.what());
    main.append(e.report());
  }
  Report all = main;
  all.append(extra);
  log_first_failure(all);
  if (opt.pretty) {
    std::string text = io::pretty_report(main, "check " + opt.file + " (W = " + std::to_string(opt.max_weight) + ")");
    if (opt.stages) text += io::pretty_report(extra, "supplementary");
    emit(opt, text);
  } else {
    io::Json out = io::report_to_json(main);
    if (opt.stages) out["supplementary"] = io::report_to_json(extra)["checks"];
    out["ok"] = all.ok();
    emit(opt, io::dump(out));
  }
  return all.ok() ? kOk : kFailed;
}

int cmd_export(const Options& opt) {
  const io::Problem p = io::load_problem(opt.file);
  const TransferState s = transfer_state(opt, p);
  if (opt.what == "linf") emit(opt, io::dump(io::linf_to_json(brackets(s))));
  if (opt.what == "tau") emit(opt, io::dump(io::tau_to_json(s)));
  if (opt.what == "coderivation") emit(opt, io::dump(io::coderivation_to_json(s)));
  if (opt.what == "contraction") emit(opt, io::dump(io::final_contraction_to_json(assemble_final_contraction(s))));
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  setup_logging();
  CLI::App app{"Homotopy transfer of dg Lie algebras over the rationals"};
  app.require_subcommand(1);
  Options opt;

  auto contraction_flags = [&](CLI::App* sub) {
    auto* h = sub->add_flag("--homology", opt.homology, "build a homology contraction");
    auto* t = sub->add_flag("--trivial-contraction", opt.trivial, "use (Id, Id, 0)");
    h->excludes(t);
  };
  auto weight = [&](CLI::App* sub) {
    sub->add_option("--max-weight", opt.max_weight, "truncation weight W")->required()->check(CLI::PositiveNumber);
  };

  auto* validate = app.add_subcommand("validate", "check the complex, bracket and contraction of a problem file");
  validate->add_option("file", opt.file)->required();
  validate->add_flag("--pretty", opt.pretty);

  auto* transfer = app.add_subcommand("transfer", "compute the transferred structure");
  transfer->add_option("file", opt.file)->required();
  weight(transfer);
  contraction_flags(transfer);
  transfer->add_option("--out", opt.out, "output file (default stdout)");

  auto* check = app.add_subcommand("check", "verify every identity through weight W");
  check->add_option("file", opt.file)->required();
  weight(check);
  contraction_flags(check);
  check->add_flag("--stages", opt.stages, "also report the supplementary low-stage and pipeline checks");
  check->add_flag("--pretty", opt.pretty, "human-readable report");

  auto* exp = app.add_subcommand("export", "print one computed object as JSON");
  exp->add_option("file", opt.file)->required();
  weight(exp);
  contraction_flags(exp);
  exp->add_option("--what", opt.what)->required()->check(CLI::IsMember({"linf", "tau", "coderivation", "contraction"}));
  exp->add_option("--out", opt.out, "output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kParse;
  }

  try {
    if (*validate) return cmd_validate(opt);
    if (*transfer) return cmd_transfer(opt);
    if (*check) return cmd_check(opt);
    if (*exp) return cmd_export(opt);
  } catch (const io::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kParse;
  } catch (const Failure& f) {
    std::cerr << "error: " << f.message << "\n";
    if (!f.body.is_null()) std::cout << io::dump(f.body);
    return kFailed;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    std::cout << io::dump(io::report_to_json(e.report()));
    return kFailed;
  } catch (const StructuralError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailed;
  }
  return kFailed;
}
