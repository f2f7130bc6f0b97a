#include "cayleysaw/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>

#include "CLI11.hpp"
#include "cayleysaw/cayley.hpp"
#include "cayleysaw/errors.hpp"
#include "cayleysaw/grigorchuk.hpp"
#include "cayleysaw/heightfn.hpp"
#include "cayleysaw/obstructions.hpp"
#include "cayleysaw/oracles.hpp"
#include "cayleysaw/saw.hpp"
#include "cayleysaw/spectral.hpp"
#include "json.hpp"

namespace cayleysaw {

using nlohmann::json;

std::string fnv1a_hex(std::string_view data) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

namespace {

// 12 significant digits; the shortest round-trip form of that value is what
// the JSON writer prints.
json num(double x) {
  if (!std::isfinite(x)) return nullptr;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return std::stod(buf);
}

std::string fmt12(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

json big(const BigInt& v) { return v.str(); }
json rational(const BigRational& v) { return to_string(v); }

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::vector<std::int64_t> parse_ints(const std::string& text) {
  std::vector<std::int64_t> out;
  std::stringstream s(text);
  std::string item;
  while (std::getline(s, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoll(item, &used));
      if (item.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument("");
    } catch (const std::exception&) {
      throw ValidationError("expected a comma separated integer list, got '" + text + "'");
    }
  }
  return out;
}

std::string label_name(const Ball& b, std::size_t l) {
  if (!b.oracle()) return std::to_string(l);
  return to_string(GenWord{{b.letter(l)}}, b.oracle()->presentation());
}

// Walk labels from a word in the oracle's presentation; each letter must be a Cayley letter.
std::vector<std::size_t> labels_of(const Ball& b, const std::string& text) {
  const GenWord w = parse_word(text, b.oracle()->presentation());
  const auto& letters = b.oracle()->cayley_letters();
  std::vector<std::size_t> out;
  for (Letter l : w.letters) {
    const auto it = std::find(letters.begin(), letters.end(), l);
    if (it == letters.end()) throw ValidationError("'" + text + "' uses a letter outside the Cayley generating set");
    out.push_back(static_cast<std::size_t>(it - letters.begin()));
  }
  return out;
}

struct Run {
  std::string format = "json";
  unsigned workers = 1;
  std::size_t vertex_cap = BallOptions{}.vertex_cap;
  std::string group_name;
  std::string presentation_hash;
  int exit_code = 0;
  std::string body;

  GroupSpec group(const std::string& name) {
    GroupSpec g = resolve_group(name);
    group_name = g.name;
    presentation_hash = fnv1a_hex(serialize(g.presentation));
    return g;
  }
  OraclePtr oracle(const std::string& name) {
    GroupSpec g = group(name);
    if (!g.oracle) throw ValidationError("group '" + name + "' has no word-problem oracle");
    return g.oracle;
  }
  Ball ball(const std::string& name, unsigned radius) {
    return Ball::build(oracle(name), radius, BallOptions{vertex_cap});
  }
  Presentation presentation(const std::string& name, const std::string& file) {
    if (!file.empty() && !name.empty()) throw ValidationError("give either --group or --presentation");
    if (!file.empty()) {
      Presentation p = parse_presentation(read_file(file));
      group_name = "file:" + file;
      presentation_hash = fnv1a_hex(serialize(p));
      return p;
    }
    if (name.empty()) throw ValidationError("--group or --presentation is required");
    return group(name).presentation;
  }

  void emit(json j, const std::string& command) {
    json doc = {{"schema", 1}, {"command", command}};
    if (!group_name.empty()) doc["group"] = group_name;
    doc.update(j);
    body = doc.dump(2) + "\n";
  }
  void require_json(const std::string& command) {
    if (format != "json") throw ValidationError("'" + command + "' only supports --format json");
  }
};

json ball_json(const Ball& b, bool with_edges) {
  json j = {{"radius", b.radius()}, {"degree", b.degree()}, {"size", b.size()},
            {"layers", b.layers()}};
  json labels = json::array();
  for (std::size_t l = 0; l < b.degree(); ++l) labels.push_back(label_name(b, l));
  j["labels"] = labels;
  if (with_edges) {
    json edges = json::array();
    for (const auto& e : b.edges()) edges.push_back({e.src, e.dst, e.label});
    j["edges"] = std::move(edges);
  }
  return j;
}

json saw_json(const SawReport& rep) {
  const MuUpperBounds mu = mu_upper_bounds(rep);
  json rows = json::array();
  for (unsigned k = 0; k <= rep.max_len; ++k) {
    json r = {{"n", k}, {"sigma", big(rep.sigma[k])}};
    if (rep.beta) r["beta"] = big((*rep.beta)[k]);
    r["fekete_bound"] = k == 0 ? json(nullptr) : num(mu.bounds[k - 1].bound);
    rows.push_back(std::move(r));
  }
  return {{"max_len", rep.max_len}, {"degree", rep.degree}, {"ball_radius", rep.ball_radius},
          {"counts", rows}, {"nodes", big(rep.nodes)},
          {"mu_upper", {{"n", mu.best_n}, {"value", num(mu.best)}}}};
}

std::string saw_csv(const SawReport& rep) {
  const MuUpperBounds mu = mu_upper_bounds(rep);
  std::string s = "n,sigma_n,beta_n,fekete_bound\n";
  for (unsigned k = 1; k <= rep.max_len; ++k) {
    s += std::to_string(k) + "," + rep.sigma[k].str() + ",";
    if (rep.beta) s += (*rep.beta)[k].str();
    s += "," + fmt12(mu.bounds[k - 1].bound) + "\n";
  }
  return s;
}

json coloring_json(const Ball& b, const EdgeColoring& c, bool with_edges) {
  json j = {{"half_length", c.half_length}, {"horizon", c.horizon},
            {"mid_edge", label_name(b, c.mid_edge_label)}, {"blue", c.blue}, {"red", c.red},
            {"unknown", c.unknown}, {"expected", c.expected},
            {"identity_holds", c.unknown == 0 && c.blue + c.red == c.expected}};
  if (c.lambda) {
    j["lambda"] = num(*c.lambda);
    j["lemma_bound"] = num(*c.lemma_bound);
    j["lemma_holds"] = c.lemma_holds ? json(*c.lemma_holds) : json(nullptr);
  }
  if (with_edges) {
    json edges = json::array();
    for (const auto& e : c.edges)
      edges.push_back({{"from", e.from}, {"label", label_name(b, e.label)}, {"to", e.to},
                       {"color", to_string(e.color)}});
    j["edges"] = std::move(edges);
  }
  return j;
}

json certificate_json(const GhfCertificate& c, const Presentation& p) {
  json basis = json::array();
  for (const auto& row : c.basis) {
    json r = json::array();
    for (const auto& x : row) r.push_back(big(x));
    basis.push_back(std::move(r));
  }
  json j = {{"verdict", to_string(c.verdict)}, {"rank", c.rank}, {"basis", basis},
            {"definitive", c.definitive}, {"constraint_rows", c.constraint_rows}};
  json gens = json::array();
  for (const auto& g : p.generators) gens.push_back(g.name);
  j["generators"] = gens;
  j["witness"] = nullptr;
  if (c.witness) {
    json w = json::object();
    for (std::size_t i = 0; i < p.rank(); ++i) w[p.generators[i].name] = c.witness->values[i];
    j["witness"] = w;
  }
  j["obstruction"] = c.obstruction ? json(to_string(*c.obstruction)) : json(nullptr);
  return j;
}

HeightAssignment height_or_witness(const Presentation& p, const std::string& text) {
  if (!text.empty()) {
    HeightAssignment h{parse_ints(text)};
    if (h.values.size() != p.rank())
      throw ValidationError("--height needs one value per generator");
    return h;
  }
  const GhfCertificate c = solve_group_height_function(p);
  if (!c.witness) throw ValidationError("the group has no group height function; pass --height");
  return *c.witness;
}

json series_json(const ReturnProbSeries& s) {
  json rows = json::array();
  for (const auto& e : s.entries) {
    json r = {{"n", e.n}, {"closed_walks", big(e.closed_walks)}, {"p", rational(e.p)},
              {"p_decimal", num(e.p.convert_to<double>())}};
    r["rho_lower"] = e.rho ? num(*e.rho) : json(nullptr);
    r["lambda_upper"] = e.lambda ? num(*e.lambda) : json(nullptr);
    rows.push_back(std::move(r));
  }
  return {{"degree", s.degree}, {"max_half_time", s.max_half_time}, {"method", s.method},
          {"series", rows}, {"rho_nondecreasing", s.rho_nondecreasing},
          {"rho_ratio_lower", s.rho_ratio ? num(*s.rho_ratio) : json(nullptr)},
          {"lambda_label", "upper bound on lambda"}};
}

json tuple_json(const OrderTuple& t) { return {t[0], t[1], t[2], t[3]}; }

bool is_tree_group(const std::string& name, unsigned& delta) {
  const GroupSpec g = resolve_group(name);
  if (!g.oracle) return false;
  if (name == "z1") {
    delta = 2;
    return true;
  }
  if (name.rfind("tree:", 0) == 0 || name.rfind("free:", 0) == 0) {
    delta = static_cast<unsigned>(g.oracle->degree());
    return true;
  }
  return false;
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Run run;
  CLI::App app{"Self-avoiding walks, height functions and spectral bounds on Cayley graphs",
               "cayleysaw"};
  app.fallthrough();
  app.require_subcommand(1);
  app.add_option("--format", run.format, "Output format")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
  app.add_option("--workers", run.workers, "Worker threads")->check(CLI::PositiveNumber);
  app.add_option("--vertex-cap", run.vertex_cap, "Largest ball to build")->check(CLI::PositiveNumber);
  app.set_version_flag("--version", kToolVersion);

  std::string group, file, word, walk, height, translations, lambda_text;
  unsigned radius = 4, max_len = 8, cap = 8, horizon = 8, length = 4, depth = 6, delta = 3,
           half_time = 20, family_cap = kDefaultFamilyCap;
  std::uint64_t order_cap = kDefaultOrderCap, bound = 10000;
  std::size_t max_set = 8, exhaustive = 12, auto_cap = StabilizerOptions{}.automorphism_cap;
  std::optional<unsigned> girth_opt;
  std::optional<double> lambda_opt, phi_opt;
  double const_c = 1.0;
  bool edges = false;

  auto add_group = [&](CLI::App* c, bool required = true) {
    auto* o = c->add_option("--group", group, "Registry name");
    if (required) o->required();
  };

  auto* parse = app.add_subcommand("parse", "Parse a presentation file");
  parse->add_option("file", file, "Presentation file")->required();

  auto* ball = app.add_subcommand("ball", "Build a Cayley ball");
  add_group(ball);
  ball->add_option("--radius", radius)->required();
  ball->add_flag("--edges,!--no-edges", edges, "Include the edge list");

  auto* girth_cmd = app.add_subcommand("girth", "Shortest cycle through the root");
  add_group(girth_cmd);
  girth_cmd->add_option("--radius", radius)->required();

  auto* cycles = app.add_subcommand("cycles", "Cycle counts through each root edge");
  add_group(cycles);
  cycles->add_option("--radius", radius)->required();
  cycles->add_option("--max-len", cap, "Longest cycle length counted")->required();

  auto* stab = app.add_subcommand("stab", "Root stabilizer of a ball");
  add_group(stab);
  stab->add_option("--radius", radius)->required();
  stab->add_option("--automorphism-cap", auto_cap);

  auto* phi = app.add_subcommand("phi", "Isoperimetric upper bound from finite sets");
  add_group(phi);
  phi->add_option("--radius", radius)->required();
  phi->add_option("--max-set", max_set);
  phi->add_option("--exhaustive", exhaustive, "Largest set size searched exhaustively");

  auto* bs = app.add_subcommand("bs-check", "Sheet properties of the BS(1,2) graph");
  std::string bs_group = "bs12";
  bs->add_option("--group", bs_group);
  bs->add_option("--radius", radius)->required();

  auto* saw = app.add_subcommand("saw", "Self-avoiding walks");
  saw->require_subcommand(1);
  auto* saw_count = saw->add_subcommand("count", "Exact SAW counts");
  add_group(saw_count);
  saw_count->add_option("--max-len", max_len)->required();
  auto* saw_bridges = saw->add_subcommand("bridges", "SAW and bridge counts");
  add_group(saw_bridges);
  saw_bridges->add_option("--max-len", max_len)->required();
  saw_bridges->add_option("--height", height, "Generator heights, comma separated");
  auto* saw_color = saw->add_subcommand("color", "Blue/red edge coloring of SAWs");
  add_group(saw_color);
  saw_color->add_option("--walk", walk, "One walk, as a word");
  saw_color->add_option("--length", length, "Color every SAW of this even length");
  saw_color->add_option("--horizon", horizon, "Extension length K");
  saw_color->add_option("--lambda", lambda_opt);

  auto* ghf = app.add_subcommand("ghf", "Group height functions");
  ghf->require_subcommand(1);
  auto* ghf_solve = ghf->add_subcommand("solve", "Solve for a group height function");
  add_group(ghf_solve, false);
  ghf_solve->add_option("--presentation", file);
  ghf_solve->add_option("--family-cap", family_cap);
  auto* ghf_verify = ghf->add_subcommand("verify", "Check graph height function axioms on a ball");
  add_group(ghf_verify);
  ghf_verify->add_option("--radius", radius)->required();
  ghf_verify->add_option("--height", height);
  ghf_verify->add_option("--translations", translations, "Words separated by ';'");
  auto* ghf_harmonic = ghf->add_subcommand("harmonic", "Check harmonicity on a ball");
  add_group(ghf_harmonic);
  ghf_harmonic->add_option("--radius", radius)->required();
  ghf_harmonic->add_option("--height", height);

  auto* spec = app.add_subcommand("spec", "Return probabilities and bound formulas");
  spec->require_subcommand(1);
  auto* spec_rp = spec->add_subcommand("return-probs", "Exact SRW return probabilities");
  add_group(spec_rp);
  spec_rp->add_option("--max-half-time", half_time)->required();
  auto* spec_bounds = spec->add_subcommand("bounds", "Evaluate the closed-form bounds");
  spec_bounds->add_option("--delta", delta)->required();
  spec_bounds->add_option("--lambda", lambda_text, "A value in [0,1], or 'tree'");
  spec_bounds->add_option("--girth", girth_opt);
  spec_bounds->add_option("--const-c", const_c)->capture_default_str();
  spec_bounds->add_option("--phi", phi_opt);

  auto* grig = app.add_subcommand("grig", "Grigorchuk group");
  grig->require_subcommand(1);
  auto* grig_red = grig->add_subcommand("reduce", "Reduced alternating form");
  grig_red->add_option("word", word)->required();
  auto* grig_id = grig->add_subcommand("is-id", "Word problem");
  grig_id->add_option("word", word)->required();
  auto* grig_ord = grig->add_subcommand("order", "Element order");
  grig_ord->add_option("word", word)->required();
  grig_ord->add_option("--cap", order_cap);
  auto* grig_search = grig->add_subcommand("search-10-4", "The 128-case identity search");
  auto* grig_act = grig->add_subcommand("action", "Action on the truncated binary tree");
  grig_act->add_option("word", word)->required();
  grig_act->add_option("--depth", depth)->required();

  auto* obs = app.add_subcommand("obstruct", "Height function obstructions");
  obs->require_subcommand(1);
  auto* obs_tor = obs->add_subcommand("torsion", "Element orders up to a word length");
  add_group(obs_tor);
  obs_tor->add_option("--depth", depth);
  obs_tor->add_option("--order-cap", order_cap);
  auto* obs_hig = obs->add_subcommand("higman", "Finite-quotient divisibility search");
  obs_hig->add_option("--bound", bound);
  obs_hig->add_flag("--audit", edges, "Include the per-prime audit");
  auto* obs_inv = obs->add_subcommand("involution", "All-involution obstruction");
  add_group(obs_inv, false);
  obs_inv->add_option("--presentation", file);

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  std::string command;
  for (CLI::App* sub = &app; !sub->get_subcommands().empty();) {
    sub = sub->get_subcommands().front();
    command += (command.empty() ? "" : " ") + sub->get_name();
  }

  const auto t0 = std::chrono::steady_clock::now();
  try {
    if (parse->parsed()) {
      run.require_json(command);
      const Presentation p = parse_presentation(read_file(file));
      run.presentation_hash = fnv1a_hex(serialize(p));
      json gens = json::array(), rels = json::array();
      for (const auto& g : p.generators) gens.push_back({{"name", g.name}, {"involution", g.involution}});
      for (const auto& r : p.relators) rels.push_back({{"word", to_string(r, p)}, {"length", r.size()}});
      run.emit({{"generators", gens}, {"relators", rels},
                {"family", p.family ? json(std::string(family_name(*p.family))) : json(nullptr)},
                {"serialized", serialize(p)}},
               command);
    } else if (ball->parsed()) {
      run.require_json(command);
      run.emit(ball_json(run.ball(group, radius), edges), command);
    } else if (girth_cmd->parsed()) {
      run.require_json(command);
      const GirthResult g = girth(run.ball(group, radius));
      run.emit({{"radius", radius}, {"girth", g.length ? json(*g.length) : json(nullptr)},
                {"exact", g.exact}, {"certified_up_to", g.certified_up_to}},
               command);
    } else if (cycles->parsed()) {
      run.require_json(command);
      const Ball b = run.ball(group, radius);
      const CycleSpectrum s = edge_cycle_spectrum(b, cap);
      json rows = json::array();
      for (const auto& e : s.edges) {
        json counts = json::object();
        for (auto [len, n] : e.counts) counts[std::to_string(len)] = n;
        rows.push_back({{"label", label_name(b, e.label)},
                        {"shortest", e.shortest() ? json(*e.shortest()) : json(nullptr)},
                        {"counts", counts}, {"certified_up_to", e.certified_up_to}});
      }
      run.emit({{"radius", radius}, {"max_len", cap}, {"edges", rows}}, command);
    } else if (stab->parsed()) {
      run.require_json(command);
      const Ball b = run.ball(group, radius);
      StabilizerOptions o;
      o.automorphism_cap = auto_cap;
      const StabilizerReport r = root_stabilizer_search(b, o);
      json fix = json::object();
      for (std::size_t l = 0; l < r.fixing_root_edge.size(); ++l) fix[label_name(b, l)] = r.fixing_root_edge[l];
      run.emit({{"radius", radius}, {"vertices", b.size()}, {"order", r.count},
                {"type_preserving", r.type_preserving}, {"fixing_root_edge", fix},
                {"automorphism_cap", auto_cap}},
               command);
    } else if (phi->parsed()) {
      run.require_json(command);
      const Ball b = run.ball(group, radius);
      const PhiBound p = phi_upper_bound(b, max_set, exhaustive);
      const BigRational exact(BigInt(p.boundary), BigInt(b.degree() * p.witness.size()));
      run.emit({{"radius", radius}, {"max_set", max_set}, {"exhaustive_limit", exhaustive},
                {"ratio", num(p.ratio)}, {"ratio_exact", rational(exact)},
                {"boundary", p.boundary}, {"set_size", p.witness.size()}, {"witness", p.witness},
                {"exhaustive", p.exhaustive}, {"certified", p.certified},
                {"sets_examined", p.sets_examined}, {"label", "upper bound on phi"}},
               command);
    } else if (bs->parsed()) {
      run.require_json(command);
      const BsSheetReport r = verify_bs_sheet(run.ball(bs_group, radius));
      json props = json::array();
      for (const auto& p : r.properties)
        props.push_back({{"name", p.name}, {"pass", p.pass}, {"violations", p.violations}});
      json census = json::array();
      for (auto [k, n] : r.census) census.push_back({{"x_edges", k.first}, {"y_edges", k.second}, {"count", n}});
      run.emit({{"radius", r.radius}, {"vertices_checked", r.vertices_checked},
                {"properties", props}, {"census", census},
                {"five_cycles_at_root", r.five_cycles_at_root}, {"all_pass", r.all_pass()}},
               command);
    } else if (saw_count->parsed() || saw_bridges->parsed()) {
      const Ball b = run.ball(group, max_len);
      SawOptions o;
      o.workers = run.workers;
      SawReport rep;
      json extra = json::object();
      if (saw_count->parsed()) {
        rep = count_saws(b, max_len, o);
      } else {
        const HeightAssignment h = height_or_witness(b.oracle()->presentation(), height);
        rep = count_bridges(b, vertex_heights(b, h), max_len, o);
        extra["height"] = h.values;
      }
      if (run.format == "csv") {
        run.body = saw_csv(rep);
      } else {
        json j = saw_json(rep);
        j.update(extra);
        run.emit(j, command);
      }
    } else if (saw_color->parsed()) {
      run.require_json(command);
      if (walk.empty() && (length == 0 || length % 2 != 0))
        throw ValidationError("--length must be a positive even number");
      const unsigned steps = walk.empty() ? length : 0;
      OraclePtr o = run.oracle(group);
      if (!walk.empty()) {
        const Ball probe = Ball::build(o, 1);
        const auto labels = labels_of(probe, walk);
        const Ball b = Ball::build(o, static_cast<unsigned>(labels.size()) + horizon, BallOptions{run.vertex_cap});
        const auto path = walk_from_labels(b, labels);
        const EdgeColoring c = classify_saw_edges(b, path, horizon, lambda_opt);
        json j = coloring_json(b, c, true);
        j["walk"] = walk;
        run.emit(j, command);
      } else {
        const Ball b = Ball::build(o, steps + horizon, BallOptions{run.vertex_cap});
        std::uint64_t walks = 0, colored = 0, dead = 0, open = 0, identity = 0, lemma = 0;
        std::uint64_t min_blue = UINT64_MAX, unknown_edges = 0;
        for_each_saw(b, steps, [&](const std::vector<Vertex>& p) {
          ++walks;
          const Extendability e = extendable(b, p, horizon);
          if (e == Extendability::certified_dead) ++dead;
          if (e == Extendability::unknown) ++open;
          if (e != Extendability::certified_extendable) return;
          const EdgeColoring c = classify_saw_edges(b, p, horizon, lambda_opt);
          ++colored;
          identity += c.unknown == 0 && c.blue + c.red == c.expected;
          lemma += c.lemma_holds.value_or(false);
          unknown_edges += c.unknown;
          min_blue = std::min(min_blue, c.blue);
        });
        json j = {{"length", steps}, {"horizon", horizon}, {"walks", walks},
                  {"extendable_walks", colored}, {"dead_walks", dead}, {"undecided_walks", open},
                  {"identity_holds", identity}, {"unknown_edges", unknown_edges},
                  {"expected_per_walk", steps * (b.degree() - 2)},
                  {"min_blue", colored ? json(min_blue) : json(nullptr)}};
        if (lambda_opt) {
          j["lambda"] = num(*lambda_opt);
          j["lemma_holds"] = lemma;
        }
        run.emit(j, command);
      }
    } else if (ghf_solve->parsed()) {
      run.require_json(command);
      const Presentation p = run.presentation(group, file);
      const bool sufficient = file.empty() && resolve_group(group).relators_sufficient;
      const GhfCertificate c = solve_group_height_function(p, family_cap, sufficient);
      json j = certificate_json(c, p);
      j["family_cap"] = family_cap;
      run.emit(j, command);
    } else if (ghf_verify->parsed() || ghf_harmonic->parsed()) {
      run.require_json(command);
      const Ball b = run.ball(group, radius);
      const Presentation& p = b.oracle()->presentation();
      const HeightAssignment h = height_or_witness(p, height);
      json j = {{"radius", radius}, {"height", h.values}};
      if (ghf_verify->parsed()) {
        std::vector<GenWord> ts;
        if (translations.empty()) {
          for (GenIndex g = 0; g < p.rank(); ++g) ts.push_back(GenWord{{Letter{g, 1}}});
        } else {
          std::stringstream s(translations);
          std::string item;
          while (std::getline(s, item, ';')) ts.push_back(parse_word(item, p));
        }
        const GraphHeightReport r = verify_graph_height_function(b, h, ts);
        json tw = json::array();
        for (const auto& t : ts) tw.push_back(to_string(t, p));
        j.update({{"translations", tw}, {"root_zero", r.root_zero},
                  {"translation_invariant", r.translation_invariant},
                  {"translation_pairs", r.translation_pairs},
                  {"translation_failures", r.translation_failures},
                  {"strict_neighbors", r.strict_neighbors},
                  {"interior_vertices", r.interior_vertices},
                  {"interior_failures", r.interior_failures}, {"all_pass", r.all_pass()}});
      } else {
        const HarmonicReport r = is_harmonic(b, h);
        j.update({{"harmonic", r.harmonic}, {"max_deviation", r.max_deviation},
                  {"vertices_checked", r.vertices_checked}});
      }
      run.emit(j, command);
    } else if (spec_rp->parsed()) {
      unsigned tree_delta = 0;
      ReturnProbSeries s;
      if (is_tree_group(group, tree_delta)) {
        run.group(group);
        s = tree_return_probabilities(tree_delta, half_time);
      } else {
        s = return_probabilities(run.ball(group, half_time), half_time, run.workers);
      }
      if (run.format == "csv") {
        std::string csv = "n,p,rho_lower,lambda_upper\n";
        for (const auto& e : s.entries)
          if (e.n > 0)
            csv += std::to_string(e.n) + "," + to_string(e.p) + "," + fmt12(*e.rho) + "," +
                   fmt12(*e.lambda) + "\n";
        run.body = csv;
      } else {
        run.emit(series_json(s), command);
      }
    } else if (spec_bounds->parsed()) {
      run.require_json(command);
      BoundParams params;
      params.delta = delta;
      params.girth = girth_opt;
      params.C = const_c;
      const Surd tree = lambda_tree(delta);
      if (lambda_text.empty() || lambda_text == "tree") {
        params.lambda = tree.value;
        params.lambda_source = LambdaSource::exact;
      } else {
        try {
          params.lambda = std::stod(lambda_text);
        } catch (const std::exception&) {
          throw ValidationError("--lambda expects a number or 'tree'");
        }
        params.lambda_source = LambdaSource::supplied;
      }
      const MuBasicBounds basic = mu_basic_bounds(delta);
      const MuBound non = mu_lower_nonamenable(params);
      json inputs = {{"delta", delta}, {"lambda", num(params.lambda)},
                     {"lambda_source", to_string(params.lambda_source)},
                     {"girth", girth_opt ? json(*girth_opt) : json("infinite")},
                     {"const_c", num(const_c)}};
      json j = {{"inputs", inputs},
                {"lambda_tree", {{"exact", tree.exact}, {"value", num(tree.value)}}},
                {"c", {{"exact", rational(theorem_constant_c(delta))}, {"value", num(non.c)}}},
                {"mu_basic", {{"lower", num(basic.lower)}, {"upper", num(basic.upper)}}},
                {"mu_lower_nonamenable",
                 {{"exponent", num(non.exponent)}, {"value", num(non.value)}, {"status", non.status}}}};
      if (params.lambda > 0) {
        const MuBound g = mu_lower_girth(params);
        j["mu_lower_girth"] = {{"value", num(g.value)}, {"status", g.status}};
      } else {
        j["mu_lower_girth"] = nullptr;
      }
      if (girth_opt) {
        const GirthLambdaBound gb = girth_lambda_bound(delta, girth_opt);
        j["girth_lambda_bound"] = {{"correction", rational(gb.correction)}, {"value", num(gb.value)}};
      }
      if (phi_opt) {
        const SandwichCheck s = check_lambda_sandwich(*phi_opt, params.lambda);
        j["sandwich"] = {{"phi", num(s.phi)},
                         {"half_phi_sq", num(s.half_phi_sq)},
                         {"cheeger_lower", num(s.cheeger_lower)},
                         {"slacks", {num(s.first_slack), num(s.second_slack), num(s.third_slack)}},
                         {"pass", s.pass()}};
      }
      run.emit(j, command);
    } else if (grig_red->parsed() || grig_id->parsed() || grig_ord->parsed() || grig_act->parsed()) {
      run.require_json(command);
      run.group("grigorchuk");
      const GrigWord w = grig_reduce(word);
      json j = {{"word", word}, {"reduced", w.letters.empty() ? "1" : w.letters}};
      if (grig_id->parsed()) j["identity"] = grig_is_identity(w);
      if (grig_ord->parsed()) {
        GrigWord cur = w;
        std::optional<std::uint64_t> order;
        for (std::uint64_t n = 1; n <= order_cap; ++n) {
          if (grig_is_identity(cur)) {
            order = n;
            break;
          }
          cur = grig_multiply(cur, w.letters);
        }
        j["order_cap"] = order_cap;
        j["order"] = order ? json(*order) : json(nullptr);
        if (!order) run.exit_code = 3;
      }
      if (grig_act->parsed()) {
        const TreeAction a = grig_tree_action(w, depth);
        j["depth"] = depth;
        j["image"] = a.image;
        j["identity"] = a.is_identity();
      }
      run.emit(j, command);
    } else if (grig_search->parsed()) {
      run.require_json(command);
      run.group("grigorchuk");
      json sols = json::array();
      for (const auto& s : grig_search_badcycles())
        sols.push_back({{"x", std::string(s.x.begin(), s.x.end())}, {"word", s.word.letters}});
      run.emit({{"cases", 128}, {"solutions", sols}}, command);
    } else if (obs_tor->parsed()) {
      run.require_json(command);
      const TorsionReport r = torsion_obstruction(run.oracle(group), depth, order_cap);
      run.emit({{"depth", r.depth}, {"order_cap", r.order_cap},
                {"elements_checked", r.elements_checked}, {"max_order", r.max_order},
                {"all_finite", r.all_finite}, {"all_powers_of_two", r.all_powers_of_two},
                {"inconclusive_word", r.inconclusive_word ? json(*r.inconclusive_word) : json(nullptr)},
                {"status", r.status}, {"argument", r.argument}},
               command);
      if (!r.all_finite) run.exit_code = 3;
    } else if (obs_hig->parsed()) {
      run.require_json(command);
      const HigmanSearch s = higman_quotient_search(bound, run.workers);
      json sols = json::array();
      for (const auto& t : s.solutions) sols.push_back(tuple_json(t));
      json j = {{"bound", s.bound}, {"solutions", sols}, {"chain_edges", s.chain_edges},
                {"chains_explored", s.chains_explored}, {"primes_audited", s.audit.size()},
                {"audit_descends", s.audit_descends}, {"edges_audited", s.edges_audited},
                {"edges_descend", s.edges_descend}};
      if (edges) {
        json audit = json::array();
        for (const auto& d : s.audit) audit.push_back({d.p, d.r, d.q});
        j["audit"] = audit;
      }
      run.emit(j, command);
    } else if (obs_inv->parsed()) {
      run.require_json(command);
      const Presentation p = run.presentation(group, file);
      const InvolutionObstruction r = involution_ghf_obstruction(p);
      run.emit({{"applicable", r.applicable}, {"generators", r.generators}, {"argument", r.argument}},
               command);
    }
  } catch (const CapExceeded& e) {
    err << "inconclusive: " << e.what() << "\n";
    return 3;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  out << run.body;
  json manifest = {{"tool_version", kToolVersion}, {"command", command}, {"args", args},
                   {"group", run.group_name.empty() ? json(nullptr) : json(run.group_name)},
                   {"presentation_hash", run.presentation_hash.empty() ? json(nullptr)
                                                                       : json(run.presentation_hash)},
                   {"workers", run.workers}, {"wall_seconds", num(secs)},
                   {"output_digest", fnv1a_hex(run.body)}};
  err << json{{"manifest", manifest}}.dump() << "\n";
  return run.exit_code;
}

}  // namespace cayleysaw
