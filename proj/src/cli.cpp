#include "arckh/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <set>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "arckh/arcalg.hpp"
#include "arckh/braid.hpp"
#include "arckh/linkinv.hpp"
#include "arckh/oracle.hpp"

namespace arckh::cli {

namespace {

using homalg::BigradedGroup;
using homalg::Coefficients;
using linkinv::InvariantResult;

std::string read_text(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), {}};
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot read " + path);
  return {std::istreambuf_iterator<char>(in), {}};
}

Coefficients default_coeffs(const std::string& flag) {
  if (!flag.empty()) return Coefficients::parse(flag);
  if (const char* env = std::getenv("KH_COEFFS"); env && *env) return Coefficients::parse(env);
  return Coefficients::integers();
}

std::string element_name(const arcalg::ArcAlgebra& alg, const arcalg::ArcElement& e) {
  std::string labels;
  for (int k = 0; k < alg.circle_count(e.source, e.target); ++k)
    labels += tqft::label_of(e.labels, k) == tqft::Label::X ? 'x' : '1';
  return std::to_string(e.source) + "|" + std::to_string(e.target) + "|" + labels;
}

// Oracle result in the same record as compute(); collapsed groups come from
// the cube complex regraded by i - j.
InvariantResult oracle_result(const oracle::Diagram& d, const std::string& name, int strands,
                              const Coefficients& coeffs, oracle::SignRule rule) {
  InvariantResult r;
  r.link = name;
  r.strands = strands;
  const auto signs = oracle::crossing_signs(d);
  for (int s : signs) r.writhe += s;
  r.coeffs = coeffs;
  r.shifts.collapsed = strands + r.writhe;
  homalg::FreeComplex fc = oracle::cube_complex(d, rule);
  r.bigraded = homalg::homology(fc, coeffs);
  for (auto& [h, gens] : fc.gens)
    for (auto& g : gens) g.floer = h - g.q;
  r.collapsed = homalg::floer_homology(fc, coeffs);
  r.jones = linkinv::euler_of(r.bigraded);
  return r;
}

std::string result_table(const InvariantResult& r) {
  std::ostringstream s;
  s << r.link << "  (" << r.coeffs.name() << ", n=" << r.strands << ", w=" << r.writhe << ")\n";
  s << table(r.bigraded, r.coeffs.name());
  s << "collapsed:";
  for (const auto& [k, g] : r.collapsed.entries()) {
    const bool z = !r.coeffs.is_field();
    s << "  k=" << k << ": "
      << (z ? g.to_string() : r.coeffs.name() + (g.rank > 1 ? "^" + std::to_string(g.rank) : ""));
  }
  s << "\n";
  return s.str();
}

}  // namespace

std::string table(const BigradedGroup& g, const std::string& ring) {
  auto name = [&](const homalg::Group& grp) {
    if (ring == "Z") return grp.to_string();
    return grp.rank == 1 ? ring : ring + "^" + std::to_string(grp.rank);
  };
  if (g.empty()) return "(zero)\n";
  std::set<int> is, js;
  for (const auto& [key, grp] : g.entries()) {
    is.insert(key.first);
    js.insert(key.second);
  }
  const int ilo = *is.begin(), ihi = *is.rbegin();
  std::size_t width = 3;
  for (const auto& [key, grp] : g.entries()) width = std::max(width, name(grp).size());
  for (int i = ilo; i <= ihi; ++i) width = std::max(width, std::to_string(i).size());
  std::ostringstream s;
  auto cell = [&](const std::string& text) {
    s << ' ' << std::string(width - text.size(), ' ') << text;
  };
  s << "  j\\i";
  for (int i = ilo; i <= ihi; ++i) cell(std::to_string(i));
  s << '\n';
  for (auto j = js.rbegin(); j != js.rend(); ++j) {
    std::string head = std::to_string(*j);
    s << std::string(head.size() < 4 ? 4 - head.size() : 0, ' ') << head;
    for (int i = ilo; i <= ihi; ++i) {
      const auto& grp = g.at(i, *j);
      cell(grp.is_zero() ? "." : name(grp));
    }
    s << '\n';
  }
  return s.str();
}

std::string diff_table(const BigradedGroup& left, const BigradedGroup& right,
                       const std::string& left_name, const std::string& right_name) {
  std::set<BigradedGroup::Key> keys;
  for (const auto& [k, g] : left.entries()) keys.insert(k);
  for (const auto& [k, g] : right.entries()) keys.insert(k);
  std::ostringstream s;
  s << "   i    j  " << left_name << " | " << right_name << '\n';
  for (auto [i, j] : keys) {
    const auto& a = left.at(i, j);
    const auto& b = right.at(i, j);
    if (a == b) continue;
    s.width(4);
    s << i << ' ';
    s.width(4);
    s << j << "  " << a.to_string() << " | " << b.to_string() << '\n';
  }
  return s.str();
}

nlohmann::json arc_dump(int n) {
  const auto& alg = arcalg::ArcAlgebra::get(n);
  nlohmann::json j;
  j["n"] = n;
  auto ms = nlohmann::json::array();
  for (const auto& m : alg.matchings()) ms.push_back(m.to_string());
  j["matchings"] = ms;
  j["dimension"] = alg.dimension();
  auto blocks = nlohmann::json::array();
  for (arcalg::MatchingId a = 0; a < alg.size(); ++a)
    for (arcalg::MatchingId b = 0; b < alg.size(); ++b)
      blocks.push_back({{"source", a},
                        {"target", b},
                        {"circles", alg.circle_count(a, b)},
                        {"dimension", alg.block_dimension(a, b)}});
  j["blocks"] = blocks;
  if (n <= 3) {
    // later * earlier for earlier in (a,b), later in (b,c)
    auto products = nlohmann::json::array();
    for (arcalg::MatchingId a = 0; a < alg.size(); ++a)
      for (arcalg::MatchingId b = 0; b < alg.size(); ++b)
        for (arcalg::MatchingId c = 0; c < alg.size(); ++c)
          for (const auto& x : alg.basis(a, b))
            for (const auto& y : alg.basis(b, c)) {
              auto terms = nlohmann::json::array();
              const auto prod = alg.multiply(y, x);
              for (auto [labels, coeff] : prod.terms())
                terms.push_back(
                    {{"element", element_name(alg, {a, c, labels})}, {"coeff", coeff}});
              products.push_back({{"earlier", element_name(alg, x)},
                                  {"later", element_name(alg, y)},
                                  {"product", terms}});
            }
    j["products"] = products;
  }
  return j;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Khovanov homology of braid closures through the arc algebra"};
  app.require_subcommand(1);
  std::string coeffs_flag, output_path;
  bool as_table = false;
  app.add_option("--coeffs", coeffs_flag, "Z, Q or F<p>; overrides KH_COEFFS");
  app.add_option("-o,--output", output_path, "write output to this file");
  app.add_flag("--table", as_table, "bigraded grid instead of JSON");

  std::string braid_text, pd_path, sign_rule = "below";
  int strands = 0;
  unsigned seed = 1;
  int crossing = -1;

  auto add_braid = [&](CLI::App* sub, bool required) {
    auto* opt = sub->add_option("--braid", braid_text, "braid word, e.g. \"1 -2 1\"");
    if (required) opt->required();
    sub->add_option("-n,--strands", strands, "strand count");
  };
  auto* compute = app.add_subcommand("compute", "invariant through the arc algebra");
  add_braid(compute, true);
  auto* orc = app.add_subcommand("oracle", "invariant from the cube of resolutions");
  add_braid(orc, false);
  orc->add_option("--pd", pd_path, "PD code file, or - for stdin");
  orc->add_option("--sign-rule", sign_rule, "below or above")
      ->check(CLI::IsMember({"below", "above"}));
  auto* compare = app.add_subcommand("compare", "both pipelines, exit 1 on mismatch");
  add_braid(compare, true);
  auto* dump = app.add_subcommand("arc-dump", "basis and multiplication table of H_n");
  dump->add_option("-n", strands, "number of arcs")->required();
  auto* verify = app.add_subcommand("verify", "property checks");
  verify->require_subcommand(1);
  auto* markov = verify->add_subcommand("markov", "conjugation and stabilization");
  add_braid(markov, true);
  markov->add_option("--seed", seed, "conjugating generator seed");
  auto* skein = verify->add_subcommand("skein", "skein exact triangles");
  add_braid(skein, true);
  skein->add_option("--crossing", crossing, "crossing index, default all");
  auto* relations = verify->add_subcommand("braid-relations", "twist relations on H_n");
  relations->add_option("-n", strands, "largest n (default 3)");
  auto* positivity = verify->add_subcommand("positivity", "structure constants of H_n");
  positivity->add_option("-n", strands, "number of arcs (default 3)");

  for (auto* sub : {compute, orc, compare, dump, verify, markov, skein, relations, positivity})
    sub->fallthrough();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    return kBadInput;
  }

  std::ostringstream buffer;
  int status = kOk;
  try {
    const Coefficients coeffs = default_coeffs(coeffs_flag);
    auto braid = [&] { return BraidWord::parse(braid_text, strands); };
    auto emit = [&](const InvariantResult& r) {
      if (as_table)
        buffer << result_table(r);
      else
        buffer << r.to_json().dump(2) << '\n';
    };
    auto report = [&](const linkinv::Report& rep, const std::string& summary) {
      for (const auto& line : rep.lines) buffer << line << '\n';
      buffer << summary << ": " << (rep.passed ? "PASS" : "FAIL") << '\n';
      if (!rep.passed) status = kFailed;
    };

    if (*compute) {
      emit(linkinv::compute(braid(), {coeffs}));
    } else if (*orc) {
      const auto rule = sign_rule == "above" ? oracle::SignRule::Above : oracle::SignRule::Below;
      if (pd_path.empty() == braid_text.empty())
        throw std::invalid_argument("oracle: give exactly one of --braid and --pd");
      if (!pd_path.empty()) {
        emit(oracle_result(oracle::parse_pd(read_text(pd_path)), "pd", 0, coeffs, rule));
      } else {
        const BraidWord b = braid();
        emit(oracle_result(oracle::braid_to_pd(b), b.to_string(), b.strands, coeffs, rule));
      }
    } else if (*compare) {
      const BraidWord b = braid();
      std::vector<Coefficients> rings{coeffs};
      if (coeffs != Coefficients::rationals()) rings.push_back(Coefficients::rationals());
      const oracle::Diagram pd = oracle::braid_to_pd(b);
      nlohmann::json j;
      j["link"] = b.to_string();
      bool equal = true;
      auto checks = nlohmann::json::array();
      for (const auto& ring : rings) {
        const InvariantResult left = linkinv::compute(b, {ring});
        const InvariantResult right =
            oracle_result(pd, b.to_string(), b.strands, ring, oracle::SignRule::Below);
        const bool same = left.bigraded == right.bigraded && left.collapsed == right.collapsed;
        equal = equal && same;
        auto diff = nlohmann::json::array();
        std::set<BigradedGroup::Key> keys;
        for (const auto& [k, g] : left.bigraded.entries()) keys.insert(k);
        for (const auto& [k, g] : right.bigraded.entries()) keys.insert(k);
        for (auto [i, jj] : keys) {
          const auto& a = left.bigraded.at(i, jj);
          const auto& o = right.bigraded.at(i, jj);
          if (!(a == o))
            diff.push_back({{"i", i}, {"j", jj}, {"arc", a.to_string()}, {"oracle", o.to_string()}});
        }
        checks.push_back({{"coefficients", ring.name()},
                          {"equal", same},
                          {"collapsed_equal", left.collapsed == right.collapsed},
                          {"diff", diff}});
        if (as_table) {
          buffer << b.to_string() << " over " << ring.name() << ": "
                 << (same ? "equal" : "MISMATCH") << '\n';
          buffer << table(left.bigraded, ring.name());
          if (!same)
            buffer << diff_table(left.bigraded, right.bigraded, "arc", "oracle");
        }
      }
      j["equal"] = equal;
      j["checks"] = checks;
      if (!as_table) buffer << j.dump(2) << '\n';
      if (!equal) {
        status = kFailed;
        if (!as_table) err << "compare: pipelines disagree\n";
      }
    } else if (*dump) {
      if (strands < 1 || strands > 6) throw std::invalid_argument("arc-dump: n must be in 1..6");
      buffer << arc_dump(strands).dump(2) << '\n';
    } else if (*markov) {
      report(linkinv::verify_markov(braid(), {coeffs}, seed), "markov invariance");
    } else if (*skein) {
      const BraidWord b = braid();
      linkinv::Report rep;
      if (crossing >= 0) {
        if (crossing >= b.length()) throw std::invalid_argument("skein: crossing out of range");
        rep = linkinv::verify_skein(b, static_cast<std::size_t>(crossing));
      } else {
        if (b.letters.empty()) throw std::invalid_argument("skein: braid has no crossings");
        for (std::size_t t = 0; t < b.letters.size(); ++t) rep.merge(linkinv::verify_skein(b, t));
      }
      report(rep, "skein triangles");
    } else if (*relations) {
      const int n = strands ? strands : 3;
      if (n < 2 || n > 4) throw std::invalid_argument("braid-relations: n must be in 2..4");
      report(linkinv::verify_braid_relations(n), "braid relations");
    } else if (*positivity) {
      const int n = strands ? strands : 3;
      if (n < 1 || n > 4) throw std::invalid_argument("positivity: n must be in 1..4");
      report(linkinv::verify_positivity(n), "all structure constants ≥ 0");
    }
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kBadInput;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << '\n';
    return kBadInput;
  }

  if (output_path.empty()) {
    out << buffer.str();
  } else {
    std::ofstream f(output_path);
    if (!f) {
      err << "error: cannot write " << output_path << '\n';
      return kBadInput;
    }
    f << buffer.str();
  }
  return status;
}

int run(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace arckh::cli
