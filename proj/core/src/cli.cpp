#include "polyclone/cli.hpp"

#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json_util.hpp"
#include "polyclone/central_algebra.hpp"
#include "polyclone/clone.hpp"
#include "polyclone/core.hpp"
#include "polyclone/files.hpp"
#include "polyclone/pol.hpp"
#include "polyclone/relations.hpp"

namespace polyclone::cli {

namespace {

using detail::json;

struct CommonFlags {
  std::string format = "json";
  std::string out_path;
  std::uint64_t cap = 1'000'000;
  double time_budget = 0.0;
  int workers = 1;
  std::uint64_t stream_threshold = 10'000;
  bool strict = false;
  bool assert_verdict = false;

  EnumerationCaps caps() const { return EnumerationCaps{cap, time_budget}; }
};

struct Outcome {
  std::string command;
  json parameters = json::object();
  json payload = json::object();
  bool trusted = true;
  std::optional<bool> verdict;       // consulted by --assert
  std::string stream_key;            // payload array that may stream to a file
};

void add_common_flags(CLI::App* cmd, CommonFlags& flags) {
  cmd->add_option("--format", flags.format, "Output format")
      ->check(CLI::IsMember({"json", "table"}))
      ->capture_default_str();
  cmd->add_option("--out", flags.out_path, "Write the payload to this file when it streams");
  cmd->add_option("--cap", flags.cap, "Bound on enumerated or closed sets")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--time-budget", flags.time_budget, "Time budget in seconds (0 = off)")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--workers", flags.workers, "Worker threads for library internals")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--stream-threshold", flags.stream_threshold,
                  "Stream payload arrays above this many items to a file")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_flag("--strict", flags.strict, "Exit 3 when any result hit a cap");
  cmd->add_flag("--assert", flags.assert_verdict, "Exit 1 when the computed verdict is false");
}

json status_json(EnumerationStatus status) {
  switch (status) {
    case EnumerationStatus::Complete:
      return "complete";
    case EnumerationStatus::MaxResultsExceeded:
      return "max-results-exceeded";
    case EnumerationStatus::TimeBudgetExceeded:
      return "time-budget-exceeded";
  }
  return "unknown";
}

json tables_json(const std::vector<OpTable>& tables) {
  json out = json::array();
  for (const OpTable& t : tables) out.push_back(detail::table_json(t));
  return out;
}

json profile_json(const RelationProfile& profile) {
  json j;
  j["reflexive"] = profile.reflexive;
  j["totally_reflexive"] = profile.totally_reflexive;
  j["symmetric"] = profile.symmetric;
  j["proper"] = profile.proper;
  j["transitive"] = profile.transitive ? json(*profile.transitive) : json(nullptr);
  if (profile.transitivity_counterexample) {
    j["transitivity_counterexample"] =
        json::array({(*profile.transitivity_counterexample)[0],
                     (*profile.transitivity_counterexample)[1]});
  } else {
    j["transitivity_counterexample"] = nullptr;
  }
  j["centers"] = profile.centers;
  j["is_central"] = profile.is_central;
  return j;
}

// Renders the JSON envelope as indented key/value text for --format table.
void render_text(const json& j, std::ostream& out, int indent) {
  const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  auto inline_scalar_array = [](const json& a, const char* sep) {
    std::string s = "[";
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (i) s += sep;
      s += a[i].dump();
    }
    return s + "]";
  };
  auto is_scalar_array = [](const json& a) {
    for (const auto& v : a) {
      if (v.is_structured()) return false;
    }
    return true;
  };
  auto is_tuple_array = [&](const json& a) {
    for (const auto& v : a) {
      if (!v.is_array() || !is_scalar_array(v)) return false;
    }
    return !a.empty();
  };

  if (j.is_object()) {
    for (const auto& [key, value] : j.items()) {
      if (value.is_object() && !value.empty()) {
        out << pad << key << ":\n";
        render_text(value, out, indent + 1);
      } else if (value.is_array() && is_tuple_array(value)) {
        out << pad << key << ": ";
        for (std::size_t i = 0; i < value.size(); ++i) {
          if (i) out << " ";
          std::string t = inline_scalar_array(value[i], ",");
          t.front() = '(';
          t.back() = ')';
          out << t;
        }
        out << "\n";
      } else if (value.is_array() && is_scalar_array(value)) {
        out << pad << key << ": " << inline_scalar_array(value, ", ") << "\n";
      } else if (value.is_array()) {
        out << pad << key << ":\n";
        render_text(value, out, indent + 1);
      } else if (value.is_object()) {
        out << pad << key << ": {}\n";
      } else {
        out << pad << key << ": " << value.dump() << "\n";
      }
    }
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) {
      out << pad << "- item " << i << ":\n";
      render_text(j[i], out, indent + 1);
    }
  } else {
    out << pad << j.dump() << "\n";
  }
}

std::string default_stream_path(const std::string& command) {
  std::string name = command;
  for (char& c : name) {
    if (c == ' ') c = '-';
  }
  return name + "-payload.json";
}

Relation relation_from_flags(const std::string& rel_path, int q, const std::vector<Element>& center,
                             int rel_arity) {
  if (!rel_path.empty()) return load_relation(rel_path);
  if (center.empty()) {
    throw Error("no relation given: pass --rel FILE or --center ELEMENTS");
  }
  return build_central_minimal(q, rel_arity, center);
}

json clone_members_json(const CloneLevel& level) {
  json members = json::array();
  for (std::size_t i = 0; i < level.members.size(); ++i) {
    json m;
    m["entries"] = level.members[i].entries();
    m["witness"] = detail::term_json(level.witnesses[i]);
    m["witness_str"] = to_string(level.witnesses[i]);
    members.push_back(std::move(m));
  }
  return members;
}

json arity_audit_json(const ArityAudit& audit) {
  json j;
  j["arity"] = audit.arity;
  j["trusted"] = audit.trusted;
  j["pol_count"] = audit.pol_count;
  j["clone_count"] = audit.clone_count;
  j["holds"] = audit.trusted ? json(audit.holds) : json(nullptr);
  j["gap_count"] = audit.gap.size();
  json samples = json::array();
  for (std::size_t i = 0; i < audit.gap.size() && i < 8; ++i) {
    samples.push_back(detail::table_json(audit.gap[i]));
  }
  j["gap_samples"] = std::move(samples);
  j["extra_count"] = audit.extra_count;
  j["compatible_count"] = audit.compatible_count;
  j["literal_decomposable"] =
      audit.decomposition_trusted ? json(audit.literal_decomposable) : json(nullptr);
  return j;
}

json pattern_audit_json(const PatternAudit& audit) {
  json j;
  j["arity"] = audit.arity;
  j["trusted"] = audit.trusted;
  j["clone_count"] = audit.clone_count;
  j["pol_diagonal_count"] =
      audit.pol_diagonal_count ? json(*audit.pol_diagonal_count) : json(nullptr);
  j["holds"] = audit.trusted ? json(audit.holds) : json(nullptr);
  return j;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Finite universal-algebra workbench: central relations, compatible functions, "
               "polynomial clones, and completeness audits"};
  app.name("polyclone");
  app.require_subcommand(1);

  CommonFlags flags;
  std::function<Outcome()> selected;

  // ---- rel ----------------------------------------------------------------
  auto* rel = app.add_subcommand("rel", "Build and classify relations");
  rel->require_subcommand(1);
  {
    auto* central = rel->add_subcommand("central", "Minimal central relation for a center set");
    auto q = std::make_shared<int>(2);
    auto center = std::make_shared<std::vector<Element>>();
    auto arity = std::make_shared<int>(2);
    central->add_option("--q", *q, "Carrier size")->required()->check(CLI::PositiveNumber);
    central->add_option("--center", *center, "Center elements")->required()->delimiter(',');
    central->add_option("--arity", *arity, "Relation arity")->check(CLI::PositiveNumber)
        ->capture_default_str();
    add_common_flags(central, flags);
    central->callback([&selected, q, center, arity]() {
      selected = [=]() {
        Outcome outcome;
        outcome.command = "rel central";
        outcome.parameters = {{"q", *q}, {"center", *center}, {"arity", *arity}};
        const Relation relation = build_central_minimal(*q, *arity, *center);
        outcome.payload["relation"] = detail::relation_json(relation);
        return outcome;
      };
    });

    auto* classify_cmd = rel->add_subcommand("classify", "Structural profile of a relation");
    auto input = std::make_shared<std::string>();
    auto cq = std::make_shared<int>(0);
    auto ccenter = std::make_shared<std::vector<Element>>();
    auto carity = std::make_shared<int>(2);
    classify_cmd->add_option("--input", *input, "Relation file");
    classify_cmd->add_option("--q", *cq, "Carrier size (with --center)");
    classify_cmd->add_option("--center", *ccenter, "Center elements for a built central relation")
        ->delimiter(',');
    classify_cmd->add_option("--arity", *carity, "Relation arity (with --center)");
    add_common_flags(classify_cmd, flags);
    classify_cmd->callback([&selected, input, cq, ccenter, carity]() {
      selected = [=]() {
        Outcome outcome;
        outcome.command = "rel classify";
        Relation relation = !input->empty()
                                ? load_relation(*input)
                                : build_central_minimal(*cq, *carity, *ccenter);
        outcome.parameters = {{"input", *input}, {"q", relation.q()}, {"arity", relation.arity()}};
        const RelationProfile profile = classify(relation);
        outcome.payload["relation"] = detail::relation_json(relation);
        outcome.payload["profile"] = profile_json(profile);
        outcome.verdict = profile.is_central;
        return outcome;
      };
    });

    auto* diagonal = rel->add_subcommand("diagonal", "Diagonal relations, one per partition");
    auto dq = std::make_shared<int>(2);
    auto darity = std::make_shared<int>(2);
    diagonal->add_option("--q", *dq, "Carrier size")->required()->check(CLI::PositiveNumber);
    diagonal->add_option("--arity", *darity, "Relation arity")->required()->check(CLI::PositiveNumber);
    add_common_flags(diagonal, flags);
    diagonal->callback([&selected, dq, darity]() {
      selected = [=]() {
        Outcome outcome;
        outcome.command = "rel diagonal";
        outcome.parameters = {{"q", *dq}, {"arity", *darity}};
        const auto partitions = set_partitions(*darity);
        const auto relations = diagonal_relations(*dq, *darity);
        outcome.payload["count"] = relations.size();
        outcome.payload["partitions"] = partitions;
        json rels = json::array();
        for (const auto& r : relations) rels.push_back(detail::relation_json(r));
        outcome.payload["relations"] = std::move(rels);
        outcome.stream_key = "relations";
        return outcome;
      };
    });
  }

  // ---- pol ----------------------------------------------------------------
  auto* pol = app.add_subcommand("pol", "Compatible-function enumeration");
  pol->require_subcommand(1);
  for (const bool counting : {false, true}) {
    auto* cmd = pol->add_subcommand(counting ? "count" : "enumerate",
                                    counting ? "Count the compatible n-ary functions"
                                             : "Enumerate the compatible n-ary functions");
    auto q = std::make_shared<int>(2);
    auto arity = std::make_shared<int>(1);
    auto rel_path = std::make_shared<std::string>();
    auto center = std::make_shared<std::vector<Element>>();
    cmd->add_option("--q", *q, "Carrier size")->required()->check(CLI::PositiveNumber);
    cmd->add_option("--arity", *arity, "Function arity")->required()->check(CLI::NonNegativeNumber);
    cmd->add_option("--rel", *rel_path, "Relation file");
    cmd->add_option("--center", *center, "Center of a built binary central relation")
        ->delimiter(',');
    add_common_flags(cmd, flags);
    cmd->callback([&selected, &flags, q, arity, rel_path, center, counting]() {
      selected = [=, &flags]() {
        Outcome outcome;
        outcome.command = counting ? "pol count" : "pol enumerate";
        const Relation relation = relation_from_flags(*rel_path, *q, *center, 2);
        outcome.parameters = {{"q", *q},
                              {"arity", *arity},
                              {"rel", *rel_path},
                              {"center", *center},
                              {"cap", flags.cap}};
        const auto result = enumerate_compatible(*q, relation, *arity, flags.caps(), flags.workers,
                                                 /*keep_tables=*/!counting);
        outcome.payload["count"] = result.count;
        outcome.payload["status"] = status_json(result.status);
        if (!counting) {
          outcome.payload["tables"] = tables_json(result.tables);
          outcome.stream_key = "tables";
        }
        outcome.trusted = result.complete();
        return outcome;
      };
    });
  }

  // ---- clone --------------------------------------------------------------
  auto* clone = app.add_subcommand("clone", "Polynomial clone levels and probes");
  clone->require_subcommand(1);
  {
    auto* generate = clone->add_subcommand("generate", "Clone level with witness terms");
    auto algebra_path = std::make_shared<std::string>();
    auto arity = std::make_shared<int>(1);
    generate->add_option("--algebra", *algebra_path, "Algebra file")->required();
    generate->add_option("--arity", *arity, "Level arity")->required()->check(CLI::PositiveNumber);
    add_common_flags(generate, flags);
    generate->callback([&selected, &flags, algebra_path, arity]() {
      selected = [=, &flags]() {
        Outcome outcome;
        outcome.command = "clone generate";
        outcome.parameters = {{"algebra", *algebra_path}, {"arity", *arity}, {"cap", flags.cap}};
        const Algebra algebra = load_algebra(*algebra_path);
        const CloneLevel level = generate_clone_level(algebra, *arity, flags.caps(), flags.workers);
        outcome.payload["arity"] = level.arity;
        outcome.payload["complete_fixpoint"] = level.complete_fixpoint;
        outcome.payload["member_count"] = level.members.size();
        outcome.payload["members"] = clone_members_json(level);
        outcome.stream_key = "members";
        outcome.trusted = level.complete_fixpoint;
        return outcome;
      };
    });
  }
  {
    auto* member = clone->add_subcommand("member", "Witness a table's clone membership");
    auto algebra_path = std::make_shared<std::string>();
    auto table_path = std::make_shared<std::string>();
    member->add_option("--algebra", *algebra_path, "Algebra file")->required();
    member->add_option("--table", *table_path, "Operation table file")->required();
    add_common_flags(member, flags);
    member->callback([&selected, &flags, algebra_path, table_path]() {
      selected = [=, &flags]() {
        Outcome outcome;
        outcome.command = "clone member";
        outcome.parameters = {{"algebra", *algebra_path}, {"table", *table_path}, {"cap", flags.cap}};
        const Algebra algebra = load_algebra(*algebra_path);
        const OpTable table = load_table(*table_path);
        const CloneLevel level =
            generate_clone_level(algebra, table.arity(), flags.caps(), flags.workers);
        const auto witness = membership(level, table);
        outcome.payload["member"] = witness.has_value();
        outcome.payload["witness"] = witness ? detail::term_json(*witness) : json(nullptr);
        outcome.payload["witness_str"] = witness ? json(to_string(*witness)) : json(nullptr);
        outcome.payload["complete_fixpoint"] = level.complete_fixpoint;
        outcome.trusted = level.complete_fixpoint || witness.has_value();
        outcome.verdict = witness.has_value();
        return outcome;
      };
    });
  }
  {
    auto* complete = clone->add_subcommand("complete", "Compatible versus polynomial functions");
    auto algebra_path = std::make_shared<std::string>();
    auto arity = std::make_shared<int>(1);
    auto rel_path = std::make_shared<std::string>();
    auto center = std::make_shared<std::vector<Element>>();
    complete->add_option("--algebra", *algebra_path, "Algebra file")->required();
    complete->add_option("--arity", *arity, "Function arity")->required()->check(CLI::PositiveNumber);
    complete->add_option("--rel", *rel_path, "Relation file");
    complete->add_option("--center", *center, "Center of a built binary central relation")
        ->delimiter(',');
    add_common_flags(complete, flags);
    complete->callback([&selected, &flags, algebra_path, arity, rel_path, center]() {
      selected = [=, &flags]() {
        Outcome outcome;
        outcome.command = "clone complete";
        outcome.parameters = {{"algebra", *algebra_path},
                              {"arity", *arity},
                              {"rel", *rel_path},
                              {"center", *center},
                              {"cap", flags.cap}};
        const Algebra algebra = load_algebra(*algebra_path);
        const Relation relation = relation_from_flags(*rel_path, algebra.q(), *center, 2);
        const auto verdict =
            completeness_verdict(algebra, relation, *arity, flags.caps(), flags.workers);
        outcome.payload["arity"] = verdict.arity;
        outcome.payload["holds"] = verdict.trusted ? json(verdict.holds) : json(nullptr);
        outcome.payload["pol_count"] = verdict.pol_count;
        outcome.payload["clone_count"] = verdict.clone_count;
        outcome.payload["gap_count"] = verdict.gap.size();
        outcome.payload["gap"] = tables_json(verdict.gap);
        outcome.payload["extra_count"] = verdict.extra_members.size();
        outcome.payload["extra_members"] = tables_json(verdict.extra_members);
        outcome.stream_key = "gap";
        outcome.trusted = verdict.trusted;
        if (verdict.trusted) outcome.verdict = verdict.holds;
        return outcome;
      };
    });
  }
  {
    auto* probe = clone->add_subcommand("probe", "Bounded maximality and prepolynomial probes");
    auto mode = std::make_shared<std::string>("maximality");
    auto generators_path = std::make_shared<std::string>();
    auto candidate_path = std::make_shared<std::string>();
    auto algebra_path = std::make_shared<std::string>();
    auto probe_arity = std::make_shared<int>(1);
    auto missing_cap = std::make_shared<int>(1);
    probe->add_option("--mode", *mode, "Probe mode")
        ->check(CLI::IsMember({"maximality", "prepoly"}))
        ->capture_default_str();
    probe->add_option("--generators", *generators_path, "Algebra file holding the generators");
    probe->add_option("--candidate", *candidate_path, "Table file for the adjoined function");
    probe->add_option("--algebra", *algebra_path, "Algebra file (prepoly mode)");
    probe->add_option("--arity", *probe_arity, "Probe arity")->required()->check(CLI::PositiveNumber);
    probe->add_option("--missing-arity-cap", *missing_cap, "Arity bound for missing functions")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    add_common_flags(probe, flags);
    probe->callback([&selected, &flags, mode, generators_path, candidate_path, algebra_path,
                     probe_arity, missing_cap]() {
      selected = [=, &flags]() {
        Outcome outcome;
        outcome.command = "clone probe";
        if (*mode == "maximality") {
          if (generators_path->empty() || candidate_path->empty()) {
            throw Error("maximality probe needs --generators and --candidate");
          }
          outcome.parameters = {{"mode", *mode},
                                {"generators", *generators_path},
                                {"candidate", *candidate_path},
                                {"arity", *probe_arity},
                                {"cap", flags.cap}};
          const Algebra generators = load_algebra(*generators_path);
          const OpTable candidate = load_table(*candidate_path);
          const auto report = maximality_probe(generators.ops(), candidate, *probe_arity, flags.caps());
          outcome.payload["mode"] = "maximality";
          outcome.payload["generates_all"] = report.trusted ? json(report.generates_all) : json(nullptr);
          outcome.payload["reached"] = report.reached;
          outcome.payload["target"] = report.target;
          outcome.trusted = report.trusted;
          if (report.trusted) outcome.verdict = report.generates_all;
        } else {
          if (algebra_path->empty()) throw Error("prepoly probe needs --algebra");
          outcome.parameters = {{"mode", *mode},
                                {"algebra", *algebra_path},
                                {"arity", *probe_arity},
                                {"missing_arity_cap", *missing_cap},
                                {"cap", flags.cap}};
          const Algebra algebra = load_algebra(*algebra_path);
          const auto report = prepolynomial_probe(algebra, *missing_cap, *probe_arity, flags.caps());
          outcome.payload["mode"] = "prepoly";
          outcome.payload["missing_count"] = report.missing_count;
          outcome.payload["failures"] = tables_json(report.failures);
          outcome.payload["all_pass"] = report.trusted ? json(report.all_pass()) : json(nullptr);
          outcome.payload["probe_arity"] = report.probe_arity;
          outcome.payload["missing_arity_cap"] = report.missing_arity_cap;
          outcome.trusted = report.trusted;
          if (report.trusted) outcome.verdict = report.all_pass();
          outcome.stream_key = "failures";
        }
        return outcome;
      };
    });
  }
  {
    auto* identities = clone->add_subcommand("identities", "Exhaustive equational check");
    auto algebra_path = std::make_shared<std::string>();
    auto equations_path = std::make_shared<std::string>();
    auto use_pattern_axioms = std::make_shared<bool>(false);
    identities->add_option("--algebra", *algebra_path, "Algebra file")->required();
    identities->add_option("--equations", *equations_path, "Equations file");
    identities->add_flag("--pattern-axioms", *use_pattern_axioms,
                         "Check the built-in pattern-algebra axioms");
    add_common_flags(identities, flags);
    identities->callback([&selected, algebra_path, equations_path, use_pattern_axioms]() {
      selected = [=]() {
        Outcome outcome;
        outcome.command = "clone identities";
        outcome.parameters = {{"algebra", *algebra_path},
                              {"equations", *equations_path},
                              {"pattern_axioms", *use_pattern_axioms}};
        const Algebra algebra = load_algebra(*algebra_path);
        std::vector<IdentityEquation> equations;
        if (*use_pattern_axioms) {
          equations = pattern_axioms();
        } else if (!equations_path->empty()) {
          equations = load_equations(*equations_path);
        } else {
          throw Error("no equations given: pass --equations FILE or --pattern-axioms");
        }
        const auto result = check_identities(algebra, equations);
        json eqs = json::array();
        for (const auto& eq : equations) {
          eqs.push_back(json{{"lhs", detail::term_json(eq.lhs)},
                             {"lhs_str", to_string(eq.lhs)},
                             {"rhs", detail::term_json(eq.rhs)},
                             {"rhs_str", to_string(eq.rhs)}});
        }
        outcome.payload["equations"] = std::move(eqs);
        outcome.payload["holds"] = result.holds;
        outcome.payload["failed_equation"] =
            result.failed_equation ? json(*result.failed_equation) : json(nullptr);
        outcome.payload["assignment"] = result.holds ? json(nullptr) : json(result.assignment);
        if (!result.holds) {
          outcome.payload["lhs_value"] = result.lhs_value;
          outcome.payload["rhs_value"] = result.rhs_value;
        }
        outcome.verdict = result.holds;
        return outcome;
      };
    });
  }

  // ---- algebra ------------------------------------------------------------
  auto* algebra_cmd = app.add_subcommand("algebra", "Build and validate algebra files");
  algebra_cmd->require_subcommand(1);
  {
    auto* build_r = algebra_cmd->add_subcommand(
        "build-r", "Central-relation algebra: meet, strict join, lifted unaries");
    auto q = std::make_shared<int>(3);
    auto lattice_path = std::make_shared<std::string>();
    auto no_unaries = std::make_shared<bool>(false);
    auto lifts = std::make_shared<std::vector<std::vector<Element>>>();
    build_r->add_option("--q", *q, "Carrier size")->required()->check(CLI::PositiveNumber);
    build_r->add_option("--lattice", *lattice_path,
                        "Lattice file with meet and join tables (default: the chain)");
    build_r->add_flag("--no-all-unaries", *no_unaries,
                      "Skip the full set of lifted unaries; list lifts with --lift");
    build_r->add_option("--lift", *lifts, "Values of one lifted unary on 1..q-1")->delimiter(',');
    add_common_flags(build_r, flags);
    build_r->callback([&selected, &flags, q, lattice_path, no_unaries, lifts]() {
      selected = [=, &flags]() {
        Outcome outcome;
        outcome.command = "algebra build-r";
        outcome.parameters = {{"q", *q},
                              {"lattice", *lattice_path},
                              {"all_lifted_unaries", !*no_unaries}};
        AlgebraFile file;
        file.q = *q;
        file.zero = 0;
        if (lattice_path->empty()) {
          const LatticeSpec spec = LatticeSpec::chain(*q);
          file.lattice = LatticeBlock{spec.meet.entries(), spec.join.entries()};
        } else {
          const AlgebraFile lattice_file = load_algebra_file(*lattice_path);
          if (!lattice_file.lattice) {
            throw Error(*lattice_path + ": no lattice block found");
          }
          if (lattice_file.q != *q) {
            throw Error(*lattice_path + ": lattice is over carrier " +
                        std::to_string(lattice_file.q) + ", requested " + std::to_string(*q));
          }
          file.lattice = lattice_file.lattice;
        }
        file.all_lifted_unaries = !*no_unaries;
        for (const auto& values : *lifts) {
          if (static_cast<int>(values.size()) != *q - 1) {
            throw Error("--lift needs " + std::to_string(*q - 1) + " values, got " +
                        std::to_string(values.size()));
          }
          file.operations.push_back(
              NamedOp{lift_name(*q, values), 1, lift_unary(*q, values).entries()});
        }
        const Algebra algebra = file.to_algebra();  // validates
        outcome.payload["q"] = algebra.q();
        outcome.payload["op_count"] = algebra.ops().size();
        outcome.payload["algebra_file"] = json::parse(to_text(file));
        if (!flags.out_path.empty()) {
          save_algebra_file(file, flags.out_path);
          outcome.payload["written"] = flags.out_path;
        } else {
          outcome.payload["written"] = nullptr;
        }
        return outcome;
      };
    });

    auto* check = algebra_cmd->add_subcommand("check", "Validate an algebra file");
    auto input = std::make_shared<std::string>();
    check->add_option("--input", *input, "Algebra file")->required();
    add_common_flags(check, flags);
    check->callback([&selected, input]() {
      selected = [=]() {
        Outcome outcome;
        outcome.command = "algebra check";
        outcome.parameters = {{"input", *input}};
        const Algebra algebra = load_algebra(*input);
        outcome.payload["valid"] = true;
        outcome.payload["q"] = algebra.q();
        outcome.payload["zero"] = algebra.zero();
        outcome.payload["op_count"] = algebra.ops().size();
        json ops = json::array();
        for (const auto& [name, table] : algebra.ops()) {
          ops.push_back(json{{"name", name}, {"arity", table.arity()}});
        }
        outcome.payload["operations"] = std::move(ops);
        outcome.verdict = true;
        return outcome;
      };
    });
  }

  // ---- synth --------------------------------------------------------------
  auto* synth = app.add_subcommand("synth", "Indicator terms and decompositions");
  synth->require_subcommand(1);
  {
    auto* indicator = synth->add_subcommand("indicator", "Indicator term for one point");
    auto algebra_path = std::make_shared<std::string>();
    auto tuple = std::make_shared<std::vector<Element>>();
    auto value = std::make_shared<Element>(0);
    indicator->add_option("--algebra", *algebra_path, "Algebra file")->required();
    indicator->add_option("--tuple", *tuple, "Point coordinates")->required()->delimiter(',');
    indicator->add_option("--value", *value, "Value at the point")->required();
    add_common_flags(indicator, flags);
    indicator->callback([&selected, algebra_path, tuple, value]() {
      selected = [=]() {
        Outcome outcome;
        outcome.command = "synth indicator";
        outcome.parameters = {{"algebra", *algebra_path}, {"tuple", *tuple}, {"value", *value}};
        const Algebra algebra = load_algebra(*algebra_path);
        const Term term = indicator_term(algebra, *tuple, *value);
        outcome.payload["term"] = detail::term_json(term);
        outcome.payload["term_str"] = to_string(term);
        outcome.payload["table"] =
            detail::table_json(table_of_term(algebra, term, static_cast<int>(tuple->size())));
        return outcome;
      };
    });
  }
  {
    auto* decompose_cmd = synth->add_subcommand("decompose", "Join of indicators over the support");
    auto algebra_path = std::make_shared<std::string>();
    auto table_path = std::make_shared<std::string>();
    auto mode = std::make_shared<std::string>("literal");
    decompose_cmd->add_option("--algebra", *algebra_path, "Algebra file")->required();
    decompose_cmd->add_option("--table", *table_path, "Function table file")->required();
    decompose_cmd->add_option("--mode", *mode, "literal joins with the strict join; repaired uses a zero-neutral join")
        ->check(CLI::IsMember({"literal", "repaired"}))
        ->capture_default_str();
    add_common_flags(decompose_cmd, flags);
    decompose_cmd->callback([&selected, algebra_path, table_path, mode]() {
      selected = [=]() {
        Outcome outcome;
        outcome.command = "synth decompose";
        outcome.parameters = {{"algebra", *algebra_path}, {"table", *table_path}, {"mode", *mode}};
        const Algebra algebra = load_algebra(*algebra_path);
        const OpTable table = load_table(*table_path);
        const auto report = decompose(algebra, table,
                                      *mode == "literal" ? DecompositionMode::Literal
                                                         : DecompositionMode::Repaired);
        outcome.payload["mode"] = *mode;
        outcome.payload["verified"] = report.verified;
        outcome.payload["term"] = detail::term_json(report.term);
        outcome.payload["term_str"] = to_string(report.term);
        json mismatches = json::array();
        for (const auto& m : report.mismatches) {
          mismatches.push_back(json{{"point", m.point}, {"expected", m.expected}, {"got", m.got}});
        }
        outcome.payload["mismatches"] = std::move(mismatches);
        outcome.verdict = report.verified;
        return outcome;
      };
    });
  }

  // ---- paper --------------------------------------------------------------
  auto* paper = app.add_subcommand("paper", "Claim audits");
  paper->require_subcommand(1);
  {
    auto* audit = paper->add_subcommand(
        "audit", "Completeness, decomposition, and pattern-algebra audit report");
    auto q = std::make_shared<int>(3);
    auto max_arity = std::make_shared<int>(1);
    audit->add_option("--q", *q, "Carrier size")->required()->check(CLI::PositiveNumber);
    audit->add_option("--max-arity", *max_arity, "Audit arities 1..N")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    add_common_flags(audit, flags);
    audit->callback([&selected, &flags, q, max_arity]() {
      selected = [=, &flags]() {
        Outcome outcome;
        outcome.command = "paper audit";
        outcome.parameters = {{"q", *q}, {"max_arity", *max_arity}, {"cap", flags.cap}};
        const auto report = audit_claims(*q, *max_arity, flags.caps(), flags.workers);
        outcome.payload["q"] = report.q;
        outcome.payload["max_arity"] = report.max_arity;
        json arities = json::array();
        for (const auto& a : report.arities) arities.push_back(arity_audit_json(a));
        outcome.payload["arities"] = std::move(arities);
        json pattern = json::array();
        for (const auto& p : report.pattern) pattern.push_back(pattern_audit_json(p));
        outcome.payload["pattern"] = std::move(pattern);
        outcome.payload["pattern_axioms_hold"] = report.pattern_axioms_hold;
        outcome.payload["findings"] = report.findings;
        outcome.trusted = report.trusted;
        if (report.trusted) {
          bool all_hold = true;
          for (const auto& a : report.arities) all_hold = all_hold && a.holds;
          for (const auto& p : report.pattern) all_hold = all_hold && p.holds;
          outcome.verdict = all_hold;
        }
        return outcome;
      };
    });
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (!selected) {
      err << "error: no command selected\n";
      return 2;
    }
    Outcome outcome = selected();

    json envelope;
    envelope["command"] = outcome.command;
    envelope["parameters"] = outcome.parameters;
    envelope["trusted"] = outcome.trusted;

    if (!outcome.stream_key.empty() && outcome.payload.contains(outcome.stream_key) &&
        outcome.payload[outcome.stream_key].is_array() &&
        outcome.payload[outcome.stream_key].size() > flags.stream_threshold) {
      const std::string path =
          flags.out_path.empty() ? default_stream_path(outcome.command) : flags.out_path;
      std::ofstream stream_out(path, std::ios::binary);
      if (!stream_out) throw Error("cannot write '" + path + "'");
      stream_out << outcome.payload.dump(2) << "\n";
      if (!stream_out) throw Error("write to '" + path + "' failed");
      outcome.payload[outcome.stream_key] =
          json{{"streamed_to", path}, {"count", outcome.payload[outcome.stream_key].size()}};
    }
    envelope["payload"] = outcome.payload;

    if (flags.format == "json") {
      out << envelope.dump(2) << "\n";
    } else {
      render_text(envelope, out, 0);
    }

    if (flags.strict && !outcome.trusted) return 3;
    if (flags.assert_verdict && outcome.verdict && !*outcome.verdict) return 1;
    return 0;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace polyclone::cli
