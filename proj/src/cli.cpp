#include "maxdiv/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "maxdiv/clt.hpp"
#include "maxdiv/error.hpp"
#include "maxdiv/fairness.hpp"
#include "maxdiv/geometry.hpp"
#include "maxdiv/moments.hpp"

namespace maxdiv::cli {

namespace {

/// Raised after a command has written a complete document but must still exit
/// nonzero (an oracle row failed).
struct CheckFailed {};

std::string cell_text(const Cell& cell, int precision) {
  return std::visit(
      [precision](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::monostate>) {
          return "";
        } else if constexpr (std::is_same_v<T, double>) {
          return format_number(v, precision);
        } else if constexpr (std::is_same_v<T, bool>) {
          return v ? "true" : "false";
        } else if constexpr (std::is_same_v<T, std::string>) {
          return v;
        } else {
          return std::to_string(v);
        }
      },
      cell);
}

nlohmann::ordered_json cell_json(const Cell& cell, int precision) {
  return std::visit(
      [precision](const auto& v) -> nlohmann::ordered_json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::monostate>) {
          return nullptr;
        } else if constexpr (std::is_same_v<T, double>) {
          if (!std::isfinite(v)) return nullptr;
          const std::string text = format_number(v, precision);
          double rounded = 0.0;
          std::from_chars(text.data(), text.data() + text.size(), rounded);
          return rounded;
        } else {
          return v;
        }
      },
      cell);
}

nlohmann::ordered_json table_json(const Table& table, int precision) {
  auto rows = nlohmann::ordered_json::array();
  for (const auto& row : table.rows) {
    nlohmann::ordered_json obj = nlohmann::ordered_json::object();
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
      obj[table.columns[c]] = cell_json(row.at(c), precision);
    }
    rows.push_back(std::move(obj));
  }
  return rows;
}

void emit(const Document& doc, const OutputSpec& spec, std::ostream& out) {
  std::ostringstream buffer;
  if (spec.format == Format::csv) {
    write_csv(doc, spec.precision, buffer);
  } else {
    write_json(doc, spec.precision, buffer);
  }
  if (!spec.destination) {
    out << buffer.str();
    out.flush();
    if (!out) throw std::runtime_error("failed writing to standard output");
    return;
  }
  std::ofstream file(*spec.destination, std::ios::binary | std::ios::trunc);
  if (!file) throw std::runtime_error("cannot open output file " + *spec.destination);
  file << buffer.str();
  file.close();
  if (!file) throw std::runtime_error("failed writing " + *spec.destination);
}

void add_output_options(CLI::App* cmd, OutputSpec& spec) {
  static const std::map<std::string, Format> kFormats{{"csv", Format::csv},
                                                      {"json", Format::json}};
  cmd->add_option("--format", spec.format, "Output format")
      ->transform(CLI::CheckedTransformer(kFormats, CLI::ignore_case));
  cmd->add_option("--out", spec.destination, "Write output to PATH instead of stdout");
  cmd->add_option("--precision", spec.precision, "Significant digits for real values")
      ->check(CLI::Range(1, 17));
}

std::vector<Cell> summary_row(std::string criterion, const Optimum& opt) {
  const AreaProfile a = area_profile(opt.x_star);
  return {std::move(criterion),
          std::string(to_string(opt.kind)),
          opt.x_star.value(),
          opt.objective_value,
          a.triangle,
          a.circular_triangle,
          a.circular_trapezoid,
          opt.at_boundary};
}

Document fairness_document(std::size_t grid, double tol) {
  Document doc;
  doc.params = {{"grid", static_cast<std::uint64_t>(grid)}, {"tol", tol}};

  Table table{"results", {"x", "alpha1", "alpha2", "alpha3", "sd", "mad", "min_piece"}, {}};
  for (const FairnessReport& r : scan(grid)) {
    table.rows.push_back({r.x.value(), r.profile.triangle, r.profile.circular_triangle,
                          r.profile.circular_trapezoid, r.sd, r.mad, r.min_piece});
  }

  Table summary{"summary",
                {"criterion", "kind", "x_star", "objective", "alpha1", "alpha2", "alpha3",
                 "at_boundary"},
                {}};
  summary.rows.push_back(summary_row("sd", minimize_sd(tol)));
  const MadOptima mad_opt = minimize_mad(tol);
  summary.rows.push_back(summary_row("mad", mad_opt.global));
  for (const Optimum& local : mad_opt.locals) summary.rows.push_back(summary_row("mad", local));
  summary.rows.push_back(summary_row("min_piece", maximize_min_piece(tol)));

  doc.tables.push_back(std::move(table));
  doc.tables.push_back(std::move(summary));
  return doc;
}

MomentMethod parse_method(const std::string& name) {
  if (name == "exact") return MomentMethod::exact_enumeration;
  if (name == "closed") return MomentMethod::closed_form;
  if (name == "asymptotic") return MomentMethod::asymptotic;
  throw CLI::ValidationError("--method", "expected exact, closed or asymptotic");
}

Document moments_document(std::uint64_t n, double p, unsigned dim, const std::string& method) {
  const CutModel model(n, p, dim);
  const RegionMoments m = region_moments(model, parse_method(method));
  Document doc;
  doc.params = {{"n", n}, {"p", p}, {"dim", static_cast<std::uint64_t>(dim)}, {"method", method}};
  Table table{"results",
              {"n", "p", "dim", "method", "mean", "variance", "second_moment", "window_center",
               "window_scale"},
              {}};
  table.rows.push_back({n, p, static_cast<std::uint64_t>(dim), std::string(to_string(m.method)),
                        m.mean, m.variance,
                        m.second_moment ? Cell{*m.second_moment} : Cell{std::monostate{}},
                        m.mean, std::sqrt(m.variance)});
  if (m.method == MomentMethod::asymptotic) {
    doc.warnings.emplace_back("asymptotic variance is a leading-order approximation");
  }
  doc.tables.push_back(std::move(table));
  return doc;
}

Document clt_document(std::uint64_t n, double p, std::uint64_t samples, std::uint64_t seed) {
  const RinottTerms terms = rinott_terms(n, p);
  const ThresholdCheck threshold = threshold_check(n, p);
  const NormalitySample ks = check_normality(n, p, samples, seed);
  Document doc;
  doc.params = {{"n", n}, {"p", p}, {"samples", samples}, {"seed", seed}};
  Table table{"results",
              {"n", "p", "samples", "seed", "N", "D", "B", "sigma", "mean", "term1", "term2",
               "term3", "max_term", "margin", "clt_regime", "ks_distance"},
              {}};
  table.rows.push_back({n, p, samples, seed, terms.n_summands, terms.max_degree, terms.bound,
                        terms.sigma, ks.mean, terms.term1, terms.term2, terms.term3,
                        terms.max_term(), threshold.margin, threshold.in_regime,
                        ks.ks_distance});
  doc.warnings.emplace_back("Rinott terms omit the unknown universal constant C");
  doc.tables.push_back(std::move(table));
  return doc;
}

Document oracle_document(std::size_t n, const std::vector<std::uint64_t>& seeds, bool& all_pass) {
  if (n > 10) throw DomainError("oracle supports n <= 10");
  Document doc;
  std::string seed_list;
  for (std::uint64_t s : seeds) seed_list += (seed_list.empty() ? "" : ",") + std::to_string(s);
  doc.params = {{"n", static_cast<std::uint64_t>(n)}, {"seeds", seed_list}};
  Table table{"results", {"seed", "n", "geometric", "formula", "pass"}, {}};
  all_pass = true;
  const std::uint64_t formula = max_regions(n, 2);
  for (std::uint64_t seed : seeds) {
    const std::uint64_t geometric =
        n == 0 ? count_regions_geometric(ChordSet{}) : count_regions_geometric(random_chord_set(n, seed));
    const bool pass = geometric == formula;
    all_pass = all_pass && pass;
    table.rows.push_back({seed, static_cast<std::uint64_t>(n), geometric, formula, pass});
  }
  doc.tables.push_back(std::move(table));
  return doc;
}

}  // namespace

std::string format_number(double v, int precision) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  std::array<char, 64> buf{};
  auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::general,
                           precision);
  double rounded = 0.0;
  std::from_chars(buf.data(), res.ptr, rounded);
  // Print the rounded value in its shortest form so trailing noise digits
  // (and "-0") never appear.
  if (rounded == 0.0) rounded = 0.0;
  res = std::to_chars(buf.data(), buf.data() + buf.size(), rounded);
  return std::string(buf.data(), res.ptr);
}

void write_csv(const Document& doc, int precision, std::ostream& out) {
  bool first = true;
  for (const Table& table : doc.tables) {
    if (!first) out << '\n';
    first = false;
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
      out << (c ? "," : "") << table.columns[c];
    }
    out << '\n';
    for (const auto& row : table.rows) {
      for (std::size_t c = 0; c < row.size(); ++c) {
        out << (c ? "," : "") << cell_text(row[c], precision);
      }
      out << '\n';
    }
  }
}

void write_json(const Document& doc, int precision, std::ostream& out) {
  nlohmann::ordered_json root = nlohmann::ordered_json::object();
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  for (const auto& [key, value] : doc.params) params[key] = cell_json(value, precision);
  root["params"] = nlohmann::ordered_json::array({params});
  root["results"] = doc.tables.empty() ? nlohmann::ordered_json::array()
                                       : table_json(doc.tables.front(), precision);
  for (std::size_t t = 1; t < doc.tables.size(); ++t) {
    root[doc.tables[t].name] = table_json(doc.tables[t], precision);
  }
  root["warnings"] = doc.warnings;
  out << root.dump(2) << '\n';
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Fair and random maximal division of a disk by chords", "maxdiv"};
  app.require_subcommand(1);

  OutputSpec spec;

  std::size_t grid = 1000;
  double tol = 1e-10;
  auto* fairness = app.add_subcommand("fairness", "Area functions, fairness scan and optima");
  fairness->add_option("--grid", grid, "Scan points over [0, pi/3]")->check(CLI::Range(2, 10'000'000));
  fairness->add_option("--tol", tol, "Optimizer tolerance on x")->check(CLI::PositiveNumber);
  add_output_options(fairness, spec);

  std::uint64_t n = 0;
  double p = 0.0;
  unsigned dim = 2;
  std::string method = "exact";
  auto* moments = app.add_subcommand("moments", "Moments of the random region count");
  moments->add_option("--n", n, "Attempted cuts")->required()->check(CLI::PositiveNumber);
  moments->add_option("--p", p, "Per-cut success probability")->required()->check(CLI::Range(0.0, 1.0));
  moments->add_option("--dim", dim, "Dimension")->check(CLI::PositiveNumber);
  moments->add_option("--method", method, "exact | closed | asymptotic")
      ->check(CLI::IsMember({"exact", "closed", "asymptotic"}));
  add_output_options(moments, spec);

  std::uint64_t samples = 100'000;
  std::uint64_t seed = 1;
  auto* clt = app.add_subcommand("clt", "Rinott terms and Monte Carlo normality check");
  clt->add_option("--n", n, "Attempted cuts")->required()->check(CLI::Range(std::uint64_t{2}, kMaxSamplerCuts));
  clt->add_option("--p", p, "Per-cut success probability")->required()->check(CLI::Range(0.0, 1.0));
  clt->add_option("--samples", samples, "Monte Carlo sample count")->check(CLI::PositiveNumber);
  clt->add_option("--seed", seed, "Sampler seed");
  add_output_options(clt, spec);

  std::size_t chords = 0;
  std::vector<std::uint64_t> seeds;
  auto* oracle = app.add_subcommand("oracle", "Geometric region count vs. the Steiner formula");
  oracle->add_option("--n", chords, "Chords per set")->required()->check(CLI::Range(0, 10));
  oracle->add_option("--seeds", seeds, "Comma-separated seeds")->required()->delimiter(',');
  add_output_options(oracle, spec);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n";
    const CLI::App* failing = &app;
    for (const CLI::App* sub : app.get_subcommands()) failing = sub;
    err << failing->help();
    return 2;
  }

  try {
    if (*fairness) {
      emit(fairness_document(grid, tol), spec, out);
    } else if (*moments) {
      emit(moments_document(n, p, dim, method), spec, out);
    } else if (*clt) {
      emit(clt_document(n, p, samples, seed), spec, out);
    } else if (*oracle) {
      bool all_pass = true;
      emit(oracle_document(chords, seeds, all_pass), spec, out);
      if (!all_pass) throw CheckFailed{};
    }
  } catch (const CheckFailed&) {
    err << "error: geometric count disagrees with the formula\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace maxdiv::cli
