#include "covdyn/cli.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "covdyn/json_io.hpp"
#include "covdyn/logistic.hpp"
#include "covdyn/oracle.hpp"
#include "covdyn/rbn.hpp"

namespace covdyn {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw_error("IoError", "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

DynamicalSystem load_system(const std::string& path) {
  return system_from_json(read_file(path));
}

OrderedJson failed_to_json(const std::vector<FailedCondition>& failed) {
  OrderedJson out = OrderedJson::array();
  for (const auto& f : failed) out.push_back(f.to_string());
  return out;
}

OrderedJson det_witness_to_json(const DetMap& witness) {
  return OrderedJson(witness.table);
}

ProbVec parse_vec_option(const std::string& text) {
  OrderedJson doc;
  try {
    doc = OrderedJson::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw_error("SchemaError", std::string("invalid vector JSON: ") + e.what());
  }
  return prob_vec_from_json(doc);
}

void emit(const std::string& text, const std::string& out_path, std::ostream& out) {
  if (out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(out_path, std::ios::binary);
  if (!file) throw_error("IoError", "cannot write " + out_path);
  file << text;
}

void emit_json(const OrderedJson& doc, const std::string& out_path, std::ostream& out) {
  emit(doc.dump(2) + "\n", out_path, out);
}

struct CommandResult {
  OrderedJson report;
  std::string text;           // used instead of `report` by export-dot
  bool negative = false;      // negative verdict, for --strict
};

}  // namespace

int cli_run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"covdyn: structure and covariant-conversion analysis of finite discrete "
               "dynamical systems"};
  app.require_subcommand(1);
  bool strict = false;
  std::string out_path;
  app.add_flag("--strict", strict,
               "exit 1 when the mathematical verdict is negative (not convertible, "
               "infeasible, forbidden, escapes)");
  app.add_option("--out", out_path, "write the report to a file instead of stdout");

  // analyze
  auto* analyze_cmd = app.add_subcommand("analyze", "attractor/basin decomposition and "
                                                    "per-state features");
  std::string analyze_system;
  analyze_cmd->add_option("--system", analyze_system, "system JSON document")->required();

  // free-states
  auto* free_cmd = app.add_subcommand("free-states", "uniform basis vectors, one per attractor");
  std::string free_system;
  free_cmd->add_option("--system", free_system, "system JSON document")->required();

  // convert
  auto* convert_cmd =
      app.add_subcommand("convert", "decide a state conversion under covariant influences");
  std::string convert_system, convert_system2, source_vec_text, target_vec_text;
  State convert_from = 0, convert_to = 0;
  bool stochastic = false;
  convert_cmd->add_option("--system", convert_system, "system JSON document")->required();
  convert_cmd->add_option("--system2", convert_system2,
                          "target system for cross-system conversion");
  auto* conv_from_opt = convert_cmd->add_option("--from", convert_from, "source state");
  auto* conv_to_opt = convert_cmd->add_option("--to", convert_to, "target state");
  convert_cmd->add_flag("--stochastic", stochastic, "decide the stochastic LP instead");
  convert_cmd->add_option("--source-vec", source_vec_text,
                          "source probability vector (JSON array of rationals)");
  convert_cmd->add_option("--target-vec", target_vec_text,
                          "target probability vector (JSON array of rationals)");

  // witness
  auto* witness_cmd = app.add_subcommand("witness", "construct the covariant witness map");
  std::string witness_system, witness_system2;
  State witness_from = 0, witness_to = 0;
  witness_cmd->add_option("--system", witness_system, "system JSON document")->required();
  witness_cmd->add_option("--system2", witness_system2,
                          "target system for cross-system conversion");
  witness_cmd->add_option("--from", witness_from, "source state")->required();
  witness_cmd->add_option("--to", witness_to, "target state")->required();

  // transition
  auto* transition_cmd = app.add_subcommand(
      "transition", "deterministic-state transition under stochastic covariant influences");
  std::string transition_system;
  State transition_from = 0, transition_to = 0;
  bool no_lp = false;
  transition_cmd->add_option("--system", transition_system, "system JSON document")->required();
  transition_cmd->add_option("--from", transition_from, "source state")->required();
  transition_cmd->add_option("--to", transition_to, "target state")->required();
  transition_cmd->add_flag("--no-lp", no_lp,
                           "stop after the necessary conditions (may answer PossiblyAllowed)");

  // rbn-expand
  auto* rbn_cmd = app.add_subcommand("rbn-expand",
                                     "compile a Boolean network into its 2^N state space");
  std::string rbn_network;
  std::uint32_t rbn_cap = kDefaultGeneCap;
  rbn_cmd->add_option("--network", rbn_network, "network JSON document")->required();
  rbn_cmd->add_option("--cap", rbn_cap, "maximum number of genes");

  // logistic
  auto* logistic_cmd = app.add_subcommand("logistic", "covariant influences on the discrete "
                                                      "logistic map");
  logistic_cmd->require_subcommand(1);
  auto* eq_cmd = logistic_cmd->add_subcommand("equations", "covariance coefficient equations");
  int eq_degree = 2;
  eq_cmd->add_option("--degree", eq_degree, "influence degree (2 or 3)");
  auto* verify_cmd = logistic_cmd->add_subcommand("verify", "check a parameter assignment");
  int verify_degree = 2;
  std::vector<std::string> assigns;
  verify_cmd->add_option("--degree", verify_degree, "influence degree (2 or 3)");
  verify_cmd->add_option("--assign", assigns, "assignment like a=-r (repeatable)")->required();
  auto* cubic_cmd = logistic_cmd->add_subcommand("cubic-check",
                                                 "rational branch enumeration, degree 3");
  std::vector<std::string> r_samples_text;
  cubic_cmd->add_option("--r", r_samples_text, "sampled rational r (repeatable)")->required();
  auto* range_cmd = logistic_cmd->add_subcommand("range", "well-posedness of the linear case");
  std::string range_r = "1";
  unsigned range_grid = 16;
  range_cmd->add_option("--r", range_r, "rate r >= 0")->required();
  range_cmd->add_option("--grid", range_grid, "grid denominator");

  // export-dot
  auto* dot_cmd = app.add_subcommand("export-dot", "render the dynamical graph as DOT");
  std::string dot_system, dot_labels;
  dot_cmd->add_option("--system", dot_system, "system JSON document")->required();
  dot_cmd->add_option("--labels", dot_labels,
                      "probability labels (JSON array of rationals)");

  // oracle (debugging backdoor, hidden from help)
  auto* oracle_cmd = app.add_subcommand("oracle", "exhaustive covariant-map search");
  oracle_cmd->group("");
  std::string oracle_system;
  std::int64_t oracle_from = -1, oracle_to = -1;
  oracle_cmd->add_option("--system", oracle_system, "system JSON document")->required();
  oracle_cmd->add_option("--from", oracle_from, "source state");
  oracle_cmd->add_option("--to", oracle_to, "target state");

  std::vector<std::string> mutable_args(args.rbegin(), args.rend());
  try {
    app.parse(mutable_args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    OrderedJson payload;
    payload["error"] = "UsageError";
    payload["detail"] = e.what();
    out << payload.dump(2) << "\n";
    return 2;
  }

  try {
    CommandResult result;

    if (*analyze_cmd) {
      const DynamicalSystem sys = load_system(analyze_system);
      const FeatureTable ft = analyze(sys);
      OrderedJson report;
      report["states"] = sys.size();
      OrderedJson attractors = OrderedJson::array();
      for (std::size_t a = 0; a < ft.num_attractors(); ++a) {
        OrderedJson entry;
        entry["id"] = a;
        entry["length"] = ft.attractors[a].size();
        entry["states"] = ft.attractors[a];
        attractors.push_back(std::move(entry));
      }
      report["attractors"] = std::move(attractors);
      OrderedJson table = OrderedJson::array();
      for (State s = 0; s < sys.size(); ++s) {
        OrderedJson row;
        row["state"] = s;
        if (!sys.state_names.empty()) row["name"] = sys.state_names[s];
        row["basin"] = ft.basin_id[s];
        row["attractor"] = ft.attractor_id[s];
        row["length"] = ft.length[s];
        row["progeny"] = ft.progeny[s];
        if (ft.ancestry[s].is_infinite()) {
          row["ancestry"] = "inf";
        } else {
          row["ancestry"] = ft.ancestry[s].value();
        }
        table.push_back(std::move(row));
      }
      report["table"] = std::move(table);
      result.report = std::move(report);
    } else if (*free_cmd) {
      const DynamicalSystem sys = load_system(free_system);
      OrderedJson basis = OrderedJson::array();
      for (const ProbVec& v : free_state_basis(sys)) basis.push_back(prob_vec_to_json(v));
      result.report["basis"] = std::move(basis);
    } else if (*convert_cmd) {
      const DynamicalSystem sys = load_system(convert_system);
      if (stochastic) {
        if (!convert_system2.empty()) {
          throw_error("UsageError", "--stochastic works within one system");
        }
        ProbVec source = source_vec_text.empty()
                             ? ProbVec::point_mass(sys.size(), convert_from)
                             : parse_vec_option(source_vec_text);
        ProbVec target = target_vec_text.empty()
                             ? ProbVec::point_mass(sys.size(), convert_to)
                             : parse_vec_option(target_vec_text);
        if (source_vec_text.empty() && !*conv_from_opt) {
          throw_error("UsageError", "need --source-vec or --from");
        }
        if (target_vec_text.empty() && !*conv_to_opt) {
          throw_error("UsageError", "need --target-vec or --to");
        }
        const StochVerdict verdict = decide_conversion(sys, source, target);
        result.report["feasible"] = verdict.feasible;
        if (verdict.feasible) {
          result.report["witness"] = stoch_matrix_to_json(*verdict.witness);
        } else {
          result.report["certificate"] = *verdict.certificate;
          result.report["phase1_optimum"] = rat_to_string(*verdict.phase1_optimum);
        }
        result.negative = !verdict.feasible;
      } else {
        if (!*conv_from_opt || !*conv_to_opt) {
          throw_error("UsageError", "need --from and --to");
        }
        const ConversionVerdict verdict =
            convert_system2.empty()
                ? convertible(sys, convert_from, convert_to)
                : convertible_cross(sys, convert_from, load_system(convert_system2),
                                    convert_to);
        result.report["convertible"] = verdict.convertible;
        result.report["failed"] = failed_to_json(verdict.failed);
        if (verdict.witness) result.report["witness"] = det_witness_to_json(*verdict.witness);
        result.negative = !verdict.convertible;
      }
    } else if (*witness_cmd) {
      const DynamicalSystem sys = load_system(witness_system);
      const DetMap map =
          witness_system2.empty()
              ? construct_witness(sys, witness_from, witness_to)
              : construct_witness_cross(sys, witness_from, load_system(witness_system2),
                                        witness_to);
      result.report["from"] = witness_from;
      result.report["to"] = witness_to;
      result.report["witness"] = det_witness_to_json(map);
    } else if (*transition_cmd) {
      const DynamicalSystem sys = load_system(transition_system);
      const TransitionVerdict verdict =
          transition_allowed(sys, transition_from, transition_to, !no_lp);
      switch (verdict.kind) {
        case TransitionKind::Forbidden:
          result.report["verdict"] = "Forbidden";
          break;
        case TransitionKind::PossiblyAllowed:
          result.report["verdict"] = "PossiblyAllowed";
          break;
        case TransitionKind::AllowedWithWitness:
          result.report["verdict"] = "AllowedWithWitness";
          break;
      }
      OrderedJson reasons = failed_to_json(verdict.reasons);
      if (verdict.lp_certificate) reasons.push_back("LPCertificate");
      result.report["reasons"] = std::move(reasons);
      if (verdict.max_probability) {
        result.report["max_transition_probability"] = rat_to_string(*verdict.max_probability);
      }
      if (verdict.witness) result.report["witness"] = stoch_matrix_to_json(*verdict.witness);
      result.negative = verdict.kind == TransitionKind::Forbidden;
    } else if (*rbn_cmd) {
      const BooleanNetwork net = parse_network(read_file(rbn_network));
      const DynamicalSystem sys = expand(net, rbn_cap);
      result.report = system_to_json(sys);
    } else if (*logistic_cmd) {
      if (*eq_cmd) {
        OrderedJson eqs = OrderedJson::array();
        for (const MultiPoly& eq : covariance_equations(eq_degree)) {
          eqs.push_back(eq.to_string());
        }
        result.report["degree"] = eq_degree;
        result.report["equations"] = std::move(eqs);
      } else if (*verify_cmd) {
        std::map<Sym, MultiPoly> assignment;
        for (const std::string& text : assigns) {
          const auto eq_pos = text.find('=');
          if (eq_pos == std::string::npos) {
            throw_error("UsageError", "assignments look like a=-r, got '" + text + "'");
          }
          const std::string name = text.substr(0, eq_pos);
          Sym sym;
          if (name == "a") {
            sym = Sym::A;
          } else if (name == "b") {
            sym = Sym::B;
          } else if (name == "c") {
            sym = Sym::C;
          } else if (name == "a3") {
            sym = Sym::A3;
          } else {
            throw_error("UsageError", "unknown symbol '" + name + "'");
          }
          assignment[sym] = parse_poly_in_r(text.substr(eq_pos + 1));
        }
        const bool ok = verify_solution(covariance_equations(verify_degree), assignment);
        result.report["degree"] = verify_degree;
        OrderedJson rendered;
        for (const auto& [sym, value] : assignment) {
          rendered[sym_name(sym)] = value.to_string();
        }
        result.report["assignment"] = std::move(rendered);
        result.report["covariant"] = ok;
        result.negative = !ok;
      } else if (*cubic_cmd) {
        std::vector<Rat> samples;
        for (const std::string& text : r_samples_text) {
          samples.push_back(rat_from_string(text));
        }
        const CubicReport report = cubic_inconsistency_check(samples);
        OrderedJson sample_docs = OrderedJson::array();
        for (const auto& sample : report.samples) {
          OrderedJson doc;
          doc["r"] = rat_to_string(sample.r);
          OrderedJson branches = OrderedJson::array();
          for (const Branch& branch : sample.search.survivors) {
            OrderedJson b;
            for (const auto& [sym, value] : branch.values) {
              b[sym_name(sym)] = rat_to_string(value);
            }
            b["constant_influence"] = branch.constant_influence;
            b["cubic"] = branch.is_genuine(3);
            branches.push_back(std::move(b));
          }
          doc["branches"] = std::move(branches);
          doc["cubic_branch"] = sample.cubic_branch;
          doc["possibly_missed_real_branch"] = sample.search.possibly_missed_real_branch;
          sample_docs.push_back(std::move(doc));
        }
        result.report["samples"] = std::move(sample_docs);
        result.report["any_cubic_branch"] = report.any_cubic_branch;
        result.report["field_of_validity"] = "Q";
        result.negative = report.any_cubic_branch;
      } else if (*range_cmd) {
        const RangeResult range = linear_case_range(rat_from_string(range_r), range_grid);
        result.report["r"] = range_r;
        if (range.status == RangeStatus::WellPosed) {
          result.report["status"] = "WellPosed";
        } else {
          result.report["status"] = "Escapes";
          result.report["witness_x"] = rat_to_string(*range.witness_x);
          result.report["value"] = rat_to_string(*range.value);
        }
        result.negative = range.status == RangeStatus::Escapes;
      }
    } else if (*dot_cmd) {
      const DynamicalSystem sys = load_system(dot_system);
      if (dot_labels.empty()) {
        result.text = export_dot(sys);
      } else {
        const ProbVec labels = parse_vec_option(dot_labels);
        result.text = export_dot(sys, labels.p);
      }
    } else if (*oracle_cmd) {
      const DynamicalSystem sys = load_system(oracle_system);
      const auto maps = enumerate_covariant(sys, sys);
      result.report["covariant_maps"] = maps.size();
      if (oracle_from >= 0 && oracle_to >= 0) {
        const bool ok = oracle_convertible(sys, static_cast<State>(oracle_from),
                                           static_cast<State>(oracle_to));
        result.report["convertible"] = ok;
        result.negative = !ok;
      }
    }

    if (!result.text.empty()) {
      emit(result.text, out_path, out);
    } else {
      emit_json(result.report, out_path, out);
    }
    return (strict && result.negative) ? 1 : 0;
  } catch (const Error& e) {
    OrderedJson payload;
    payload["error"] = e.code();
    payload["detail"] = e.what();
    out << payload.dump(2) << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace covdyn
