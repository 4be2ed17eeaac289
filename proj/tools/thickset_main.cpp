// thickset: command-line front end for the thickness / gap-lemma / game /
// scaffold / verifier library.  Human-readable tables go to stdout;
// machine-readable artifacts (JSON, JSONL traces, CSV) only behind flags.
//
// Exit codes: 0 success, 1 failure-type verdict (infeasible bound with
// --require-feasible, hypothesis failure with --require-intersect, empty
// pattern search, ...), 2 usage or parse errors.

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>

#include "thickset/bounds.hpp"
#include "thickset/game.hpp"
#include "thickset/gap_lemma.hpp"
#include "thickset/scaffold.hpp"
#include "thickset/set_model.hpp"
#include "thickset/thickness.hpp"
#include "thickset/verifier.hpp"

using json = nlohmann::ordered_json;
using namespace thickset;

namespace {

// Fixed default seed so repeated runs are byte-identical.
constexpr std::uint64_t kDefaultSeed = 24269;

Rat parse_rat_arg(const std::string& s) {
  auto slash = s.find('/');
  using boost::multiprecision::cpp_int;
  if (slash != std::string::npos)
    return Rat(cpp_int(s.substr(0, slash)), cpp_int(s.substr(slash + 1)));
  auto dot = s.find('.');
  if (dot == std::string::npos) return Rat(cpp_int(s));
  // exact decimal: digits after the dot over a power of ten
  std::string digits = s.substr(0, dot) + s.substr(dot + 1);
  cpp_int den = 1;
  for (size_t i = dot + 1; i < s.size(); ++i) den *= 10;
  return Rat(cpp_int(digits), den);
}

json point_json(const Point& p) {
  json a = json::array();
  for (const Rat& x : p) a.push_back(to_d(x));
  return a;
}

json shape_json(const Shape& s) {
  json out;
  if (const auto* b = std::get_if<Box>(&s)) {
    out["type"] = "box";
    out["lower"] = point_json(b->lower);
    out["upper"] = point_json(b->upper);
  } else if (const auto* bl = std::get_if<Ball>(&s)) {
    out["type"] = "ball";
    out["center"] = point_json(bl->center);
    out["radius"] = to_d(bl->radius);
  } else {
    out["type"] = "cells";
    out["cells"] = json::array();
    for (const Box& c : std::get<CellUnion>(s).cells) {
      json cj;
      cj["lower"] = point_json(c.lower);
      cj["upper"] = point_json(c.upper);
      out["cells"].push_back(cj);
    }
  }
  return out;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("MalformedDescriptor", "cannot write " + path);
  return out;
}

// ---------------------------------------------------------------- thickness
int run_thickness(const std::string& path, int depth, bool emit_json) {
  SetDescriptor spec = load_descriptor(path);
  GapEnumeration en = enumerate_gaps(spec, depth);
  ThicknessReport rep =
      en.dimension == 1 ? thickness_1d(en) : thickness_rd(en);
  std::printf("tau %.5f\n", rep.value);
  std::printf("certified_lower %.12g\n", rep.certified_lower);
  std::printf("upper %.12g\n", rep.upper);
  std::printf("depth %d gaps %zu %s\n", en.depth, en.gaps.size(),
              rep.truncation == Truncation::Exact ? "exact" : "truncated");
  if (emit_json) {
    json j;
    j["tau"] = rep.value;
    j["certified_lower"] = rep.certified_lower;
    j["upper"] = rep.upper;
    j["depth"] = en.depth;
    j["gaps"] = en.gaps.size();
    j["exact"] = rep.truncation == Truncation::Exact;
    std::cout << j.dump(2) << "\n";
  }
  return 0;
}

// ----------------------------------------------------------------- gaplemma
int run_gaplemma(const std::string& a, const std::string& b, int depth,
                 double refine_eps, bool require, bool emit_json) {
  SetDescriptor c1 = load_descriptor(a);
  SetDescriptor c2 = load_descriptor(b);
  GapLemmaVerdict v = gap_lemma_decide(c1, c2, depth);
  const char* tag = v.tag == GapLemmaTag::IntersectGuaranteed
                        ? "intersect-guaranteed"
                        : v.tag == GapLemmaTag::TriviallyIntersect
                              ? "trivially-intersect"
                              : "hypothesis-fails";
  std::printf("verdict %s\n", tag);
  std::printf("tau_product %.12g\n", v.tau_product);
  if (!v.detail.empty()) std::printf("detail %s\n", v.detail.c_str());
  json j;
  j["verdict"] = tag;
  j["tau_product"] = v.tau_product;
  j["detail"] = v.detail;
  if (v.tag != GapLemmaTag::HypothesisFails && refine_eps > 0) {
    RefineResult r = linked_refine(c1, c2, refine_eps);
    std::printf("witness");
    for (const Rat& x : r.point) std::printf(" %.12g", to_d(x));
    std::printf("\nwitness_dist %.3g %.3g iters %d\n", r.dist1, r.dist2,
                r.iterations);
    j["witness"] = point_json(r.point);
    j["witness_dist"] = {r.dist1, r.dist2};
  }
  if (emit_json) std::cout << j.dump(2) << "\n";
  return (require && v.tag == GapLemmaTag::HypothesisFails) ? 1 : 0;
}

// -------------------------------------------------------------------- bound
int run_bound_value(const DimensionBound& b, bool require_feasible,
                    bool emit_json) {
  std::printf("%g\n", b.value);
  std::printf("feasible %s (slack %.6g, c %.6g, beta %.6g)\n",
              b.feasible ? "yes" : "no", b.slack, b.c, b.beta);
  if (emit_json) {
    json j;
    j["value"] = b.value;
    j["feasible"] = b.feasible;
    j["slack"] = b.slack;
    j["c"] = b.c;
    j["beta"] = b.beta;
    std::cout << j.dump(2) << "\n";
  }
  return (require_feasible && !b.feasible) ? 1 : 0;
}

// --------------------------------------------------------------------- game
int run_game(const std::string& target_path, const std::string& alpha_s,
             const Rat& beta, double c, const std::string& rho_s,
             double stop_radius, const std::string& bob_kind,
             std::uint64_t seed, const std::string& trace_path,
             bool emit_json) {
  SetDescriptor target = load_descriptor(target_path);
  AliceStrategy alice = make_thickness_strategy(target);
  const auto& ts = std::get<ThicknessStrategy>(alice.node);

  GameParams params;
  params.d = spec_dim(target);
  params.beta = beta;
  params.c = c;
  // default: the strategy's nominal budget 1/(tau beta), relaxed by the
  // factor 2 its legality bound diam(G) <= diam(B)/(tau beta) needs when the
  // budget is read against the ball radius
  params.alpha = alpha_s.empty() ? Rat(2) / (Rat(ts.tau) * beta)
                                 : parse_rat_arg(alpha_s);
  params.rho = rho_s.empty() ? beta * Rat(spec_diam(target)) / 2
                             : parse_rat_arg(rho_s);

  BobPolicy bob = ConcentricShrink{shape_center(spec_hull(target))};
  if (bob_kind == "chaser") bob = GapChaser{target, seed};
  else if (bob_kind == "random") bob = RandomLegal{seed};
  else if (bob_kind != "shrink")
    throw CLI::ValidationError("--bob must be shrink, chaser or random");

  MatchResult r = play_match(alice, bob, params, stop_radius, &target);
  const char* verdict = r.verdict == MatchVerdict::InTargetWithinRho
                            ? "in-target"
                            : r.verdict == MatchVerdict::Erased ? "erased"
                                                                : "escaped";
  std::printf("tau %.6g alpha %.6g beta %.6g rho %.6g\n", ts.tau,
              to_d(params.alpha), to_d(params.beta), to_d(params.rho));
  std::printf("verdict %s after %zu turns, final radius %.3g\n", verdict,
              r.state.turns.size(), r.final_radius);
  std::printf("outcome");
  for (const Rat& x : r.outcome) std::printf(" %.12g", to_d(x));
  std::printf("\n");

  if (!trace_path.empty()) {
    std::ofstream out = open_out(trace_path);
    int m = 0;
    for (const Turn& t : r.state.turns) {
      json line;
      line["turn"] = m++;
      line["bob"] = {{"center", point_json(t.bob.center)},
                     {"radius", to_d(t.bob.radius)}};
      line["erased"] = json::array();
      for (const Shape& s : t.erased) line["erased"].push_back(shape_json(s));
      line["budget_used"] = t.budget_used;
      out << line.dump() << "\n";
    }
  }
  if (emit_json) {
    json j;
    j["verdict"] = verdict;
    j["turns"] = r.state.turns.size();
    j["final_radius"] = r.final_radius;
    j["outcome"] = point_json(r.outcome);
    std::cout << j.dump(2) << "\n";
  }
  return 0;
}

// ----------------------------------------------------------------- scaffold
void emit_tree(std::ofstream& out, const ScaffoldNode& node,
               const ScaffoldParams& p) {
  json line;
  line["level"] = node.ball.level;
  line["index"] = node.ball.z;
  line["family"] = node.ball.family == LatticeFamily::D ? "D" : "E";
  line["phi"] = node.phi;
  line["survivor"] = true;
  Ball b = lattice_ball(node.ball, p);
  line["center"] = point_json(b.center);
  line["radius"] = to_d(b.radius);
  out << line.dump() << "\n";
  for (const ScaffoldNode& ch : node.children) emit_tree(out, ch, p);
}

int run_scaffold(int d, const std::string& alpha_s, const std::string& beta_s,
                 double c, const std::string& rho_s,
                 const std::string& gamma_s, int depth,
                 const std::string& target_path, bool waive,
                 const std::string& emit_path, bool emit_json) {
  std::optional<Rat> gamma;
  if (!gamma_s.empty()) gamma = parse_rat_arg(gamma_s);
  ScaffoldParams p =
      make_scaffold_params(d, parse_rat_arg(alpha_s), parse_rat_arg(beta_s), c,
                           parse_rat_arg(rho_s), gamma);
  std::printf("gamma %.12g N %lld M %lld log_M %.6g feasible %s\n",
              to_d(p.gamma), p.N, p.M, p.log_M,
              scaffold_feasible(p) ? "yes" : "no");
  ClaimsReport cl = check_claims(p);
  std::printf("claims hypothesis=%d i=%d ii=%d iii=%d\n", cl.hypothesis,
              cl.claim_i, cl.claim_ii, cl.claim_iii);
  json jdim;
  if (scaffold_feasible(p)) {
    ScaffoldDimension dim = scaffold_dimension(p);
    std::printf("dimension from_tree %.12g from_formula %.12g%s\n",
                dim.from_tree, dim.from_formula,
                dim.formula_dominated ? " (formula dominates)" : "");
    jdim["from_tree"] = dim.from_tree;
    jdim["from_formula"] = dim.from_formula;
  } else {
    std::printf("dimension unavailable (infeasible parameters)\n");
  }

  AliceStrategy alice{PassStrategy{}};
  if (!target_path.empty())
    alice = make_thickness_strategy(load_descriptor(target_path));
  ScaffoldNode root = build_scaffold(p, alice, depth, waive);
  size_t nodes = 0;
  std::vector<const ScaffoldNode*> stack{&root};
  while (!stack.empty()) {
    const ScaffoldNode* n = stack.back();
    stack.pop_back();
    ++nodes;
    for (const ScaffoldNode& ch : n->children) stack.push_back(&ch);
  }
  std::printf("tree depth %d nodes %zu\n", depth, nodes);
  if (!emit_path.empty()) {
    std::ofstream out = open_out(emit_path);
    emit_tree(out, root, p);
  }
  if (emit_json) {
    json j;
    j["gamma"] = to_d(p.gamma);
    j["N"] = p.N;
    j["M"] = p.M;
    j["dimension"] = jdim;
    j["nodes"] = nodes;
    std::cout << j.dump(2) << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"thickness, gap-lemma, game, scaffold and box-counting tools"};
  app.require_subcommand(1);

  // thickness
  std::string th_path;
  int th_depth = 4;
  bool th_json = false;
  CLI::App* th = app.add_subcommand("thickness", "thickness of a descriptor");
  th->add_option("descriptor", th_path, "descriptor JSON file")->required();
  th->add_option("--depth", th_depth, "enumeration depth (default 4)");
  th->add_flag("--json", th_json, "also print machine-readable JSON");

  // gaplemma
  std::string gl_a, gl_b;
  int gl_depth = 6;
  double gl_refine = 0;
  bool gl_require = false, gl_json = false;
  CLI::App* gl = app.add_subcommand("gaplemma", "gap-lemma intersection test");
  gl->add_option("first", gl_a, "first descriptor")->required();
  gl->add_option("second", gl_b, "second descriptor")->required();
  gl->add_option("--depth", gl_depth, "enumeration depth (default 6)");
  gl->add_option("--refine", gl_refine,
                 "refine a witness point to this tolerance");
  gl->add_flag("--require-intersect", gl_require,
               "exit 1 unless intersection is guaranteed");
  gl->add_flag("--json", gl_json, "also print machine-readable JSON");

  // bound <kind>
  CLI::App* bd = app.add_subcommand("bound", "dimension / capacity bounds");
  bd->require_subcommand(1);
  double bd_tau = 1, bd_sup = 1, bd_diam_b = 1, bd_diam_c = 1, bd_c = 0.5;
  std::vector<double> bd_taus;
  int bd_d = 1;
  bool bd_opt = false, bd_require = false, bd_json = false;
  CLI::App* b1 = bd->add_subcommand("dim1d", "log 2 / log(2 + 1/tau)");
  b1->add_option("--tau", bd_tau)->required();
  CLI::App* bc = bd->add_subcommand("convex", "d - 1 + dim1d(tau)");
  bc->add_option("--tau", bd_tau)->required();
  bc->add_option("-d,--dim", bd_d)->required();
  CLI::App* bi = bd->add_subcommand("intersection", "many-set lower bound");
  bi->add_option("--tau", bd_taus, "thickness per set")->required();
  bi->add_option("--sup-diam", bd_sup)->required();
  bi->add_option("--diam-b", bd_diam_b)->required();
  bi->add_option("-d,--dim", bd_d)->required();
  bi->add_option("--c", bd_c);
  bi->add_flag("--optimize", bd_opt, "search the best feasible c");
  bi->add_flag("--require-feasible", bd_require);
  bi->add_flag("--json", bd_json);
  CLI::App* bs = bd->add_subcommand("single", "one-set lower bound");
  bs->add_option("--tau", bd_tau)->required();
  bs->add_option("--diam-b", bd_diam_b)->required();
  bs->add_option("--diam-c", bd_diam_c)->required();
  bs->add_option("-d,--dim", bd_d)->required();
  bs->add_option("--c", bd_c);
  bs->add_flag("--require-feasible", bd_require);
  bs->add_flag("--json", bd_json);
  CLI::App* bp = bd->add_subcommand("pattern", "pattern capacity N(tau)");
  bp->add_option("--tau", bd_tau)->required();
  bp->add_option("--diam-b", bd_diam_b)->required();
  bp->add_option("--diam-c", bd_diam_c)->required();
  bp->add_option("-d,--dim", bd_d);

  // game
  std::string gm_target, gm_alpha, gm_rho, gm_bob = "chaser", gm_trace;
  std::string gm_beta = "1/4";
  double gm_c = 0, gm_stop = 1e-6;
  std::uint64_t gm_seed = kDefaultSeed;
  bool gm_json = false;
  CLI::App* gm = app.add_subcommand("game", "thickness-strategy match");
  gm->add_option("--target", gm_target, "target descriptor")->required();
  gm->add_option("--alpha", gm_alpha, "Alice budget (default 2/(tau beta))");
  gm->add_option("--beta", gm_beta, "radius ratio (default 1/4)");
  gm->add_option("--c", gm_c, "budget exponent (default 0)");
  gm->add_option("--rho", gm_rho, "initial radius (default beta diam/2)");
  gm->add_option("--stop-radius", gm_stop, "stop threshold (default 1e-6)");
  gm->add_option("--bob", gm_bob, "shrink | chaser | random");
  gm->add_option("--seed", gm_seed, "RNG seed (default 24269)");
  gm->add_option("--trace", gm_trace, "write a JSONL transcript here");
  gm->add_flag("--json", gm_json);

  // scaffold
  std::string sc_alpha, sc_beta = "1/4", sc_rho = "1", sc_gamma, sc_target,
              sc_emit;
  int sc_d = 1, sc_depth = 2;
  double sc_c = 0.5;
  bool sc_waive = false, sc_json = false;
  CLI::App* sc = app.add_subcommand("scaffold", "lattice-ball construction");
  sc->add_option("-d,--dim", sc_d, "ambient dimension (default 1)");
  sc->add_option("--alpha", sc_alpha, "Alice budget")->required();
  sc->add_option("--beta", sc_beta, "radius ratio (default 1/4)");
  sc->add_option("--c", sc_c, "budget exponent (default 0.5)");
  sc->add_option("--rho", sc_rho, "base radius (default 1)");
  sc->add_option("--gamma", sc_gamma, "survivor threshold scale");
  sc->add_option("--depth", sc_depth, "tree depth (default 2)");
  sc->add_option("--target", sc_target,
                 "play against this set's thickness strategy");
  sc->add_flag("--waive-feasibility", sc_waive,
               "build at desk scale even when the hypothesis fails");
  sc->add_option("--emit", sc_emit, "write the tree as JSONL here");
  sc->add_flag("--json", sc_json);

  // verify <mode>
  CLI::App* vf = app.add_subcommand("verify", "rasterization and box counting");
  vf->require_subcommand(1);
  std::string vf_path, vf_path2, vf_csv, vf_lambda = "1";
  std::vector<std::string> vf_paths, vf_points;
  std::vector<int> vf_levels;
  int vf_level = 4;
  bool vf_json = false, vf_theorem = false;
  CLI::App* vr = vf->add_subcommand("raster", "two-sided cell counts");
  vr->add_option("descriptor", vf_path)->required();
  vr->add_option("--level", vf_level, "grid level (default 4)");
  vr->add_flag("--json", vf_json);
  CLI::App* vb = vf->add_subcommand("boxdim", "box-counting slope");
  vb->add_option("descriptor", vf_path)->required();
  vb->add_option("--levels", vf_levels, "grid levels (>= 4 of them)")
      ->required();
  vb->add_option("--csv", vf_csv, "write scale,count rows here");
  vb->add_flag("--json", vf_json);
  CLI::App* vi = vf->add_subcommand("intersect", "shared-grid intersection");
  vi->add_option("descriptors", vf_paths, "two or more descriptor files")
      ->required();
  vi->add_option("--level", vf_level, "grid level (default 4)");
  vi->add_flag("--json", vf_json);
  CLI::App* vp = vf->add_subcommand("pattern", "certified homothetic copies");
  vp->add_option("descriptor", vf_path)->required();
  vp->add_option("--point", vf_points, "pattern point, comma-separated")
      ->required();
  vp->add_option("--lambda", vf_lambda, "homothety scale (default 1)");
  vp->add_option("--level", vf_level, "certification depth (default 4)");
  vp->add_flag("--theorem-mode", vf_theorem);
  vp->add_flag("--json", vf_json);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (th->parsed()) return run_thickness(th_path, th_depth, th_json);
    if (gl->parsed())
      return run_gaplemma(gl_a, gl_b, gl_depth, gl_refine, gl_require,
                          gl_json);
    if (bd->parsed()) {
      if (b1->parsed()) {
        std::printf("%g\n", dim_lower_1d(bd_tau));
        return 0;
      }
      if (bc->parsed()) {
        std::printf("%g\n", convex_gap_dim_bound(bd_tau, bd_d));
        return 0;
      }
      if (bi->parsed()) {
        DimensionBound b =
            bd_opt ? optimize_c(bd_taus, bd_sup, bd_diam_b, bd_d)
                   : intersection_bound(bd_taus, bd_sup, bd_diam_b, bd_d,
                                        bd_c);
        return run_bound_value(b, bd_require, bd_json);
      }
      if (bs->parsed()) {
        DimensionBound b =
            single_set_bound(bd_tau, bd_diam_b, bd_diam_c, bd_d, bd_c);
        return run_bound_value(b, bd_require, bd_json);
      }
      PatternCapacity pc = pattern_capacity(bd_tau, bd_diam_b, bd_diam_c,
                                            bd_d);
      std::printf("%lld\n", pc.N);
      std::printf("beta %.6g raw %.6g%s\n", pc.beta, pc.raw,
                  pc.pre_asymptotic ? " (pre-asymptotic range)" : "");
      return 0;
    }
    if (gm->parsed())
      return run_game(gm_target, gm_alpha, parse_rat_arg(gm_beta), gm_c,
                      gm_rho, gm_stop, gm_bob, gm_seed, gm_trace, gm_json);
    if (sc->parsed())
      return run_scaffold(sc_d, sc_alpha, sc_beta, sc_c, sc_rho, sc_gamma,
                          sc_depth, sc_target, sc_waive, sc_emit, sc_json);
    if (vr->parsed()) {
      CellGrid g = rasterize(load_descriptor(vf_path), vf_level);
      std::printf("level %d cells %lld certified %lld\n", g.level,
                  g.may_count, g.inside_count);
      if (vf_json) {
        json j;
        j["level"] = g.level;
        j["may"] = g.may_count;
        j["inside"] = g.inside_count;
        std::cout << j.dump(2) << "\n";
      }
      return 0;
    }
    if (vb->parsed()) {
      SetDescriptor spec = load_descriptor(vf_path);
      DimensionEstimate est = box_counting(spec, vf_levels);
      std::printf("slope %.6g residual %.3g\n", est.slope, est.residual);
      std::printf("%s\n", est.note.c_str());
      if (!vf_csv.empty()) {
        std::ofstream out = open_out(vf_csv);
        out << "scale,count\n";
        for (size_t i = 0; i < est.log_inv_scale.size(); ++i) {
          char line[64];
          std::snprintf(line, sizeof line, "%.12g,%lld\n",
                        std::exp(-est.log_inv_scale[i]),
                        std::llround(std::exp(est.log_count[i])));
          out << line;
        }
      }
      if (vf_json) {
        json j;
        j["slope"] = est.slope;
        j["residual"] = est.residual;
        j["log_inv_scale"] = est.log_inv_scale;
        j["log_count"] = est.log_count;
        std::cout << j.dump(2) << "\n";
      }
      return 0;
    }
    if (vi->parsed()) {
      std::vector<SetDescriptor> specs;
      for (const std::string& p : vf_paths)
        specs.push_back(load_descriptor(p));
      IntersectVerdict v = brute_intersection(specs, vf_level);
      const char* tag = v.tag == IntersectTag::NonemptyWitness
                            ? "nonempty-witness"
                            : v.tag == IntersectTag::CertifiedDisjoint
                                  ? "certified-disjoint"
                                  : "possibly-empty";
      std::printf("verdict %s common_cells %lld\n", tag, v.common_cells);
      if (v.witness) {
        std::printf("witness");
        for (const Rat& x : *v.witness) std::printf(" %.12g", to_d(x));
        std::printf("\n");
      }
      if (vf_json) {
        json j;
        j["verdict"] = tag;
        j["common_cells"] = v.common_cells;
        if (v.witness) j["witness"] = point_json(*v.witness);
        std::cout << j.dump(2) << "\n";
      }
      return v.tag == IntersectTag::CertifiedDisjoint ? 1 : 0;
    }
    if (vp->parsed()) {
      SetDescriptor spec = load_descriptor(vf_path);
      std::vector<Point> pattern;
      for (const std::string& ps : vf_points) {
        Point p;
        std::stringstream ss(ps);
        std::string tok;
        while (std::getline(ss, tok, ',')) p.push_back(parse_rat_arg(tok));
        pattern.push_back(std::move(p));
      }
      std::vector<Point> found;
      try {
        found = pattern_search(spec, pattern, parse_rat_arg(vf_lambda),
                               vf_level, vf_theorem);
      } catch (const Error& e) {
        if (e.kind == "EmptyAtThisDepth") {
          std::printf("witnesses 0 (empty at depth %d; not a disproof)\n",
                      vf_level);
          return 1;
        }
        throw;
      }
      std::printf("witnesses %zu\n", found.size());
      for (size_t i = 0; i < std::min<size_t>(found.size(), 5); ++i) {
        std::printf("witness");
        for (const Rat& x : found[i]) std::printf(" %.12g", to_d(x));
        std::printf("\n");
      }
      if (vf_json) {
        json j;
        j["witnesses"] = found.size();
        j["first"] = found.empty() ? json() : point_json(found.front());
        std::cout << j.dump(2) << "\n";
      }
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
