#include <chrono>
#include <cmath>
#include <exception>
#include <future>
#include <map>

#include "weilreg/regularize.hpp"
#include "weilreg/session.hpp"
#include "weilreg/slice.hpp"

namespace weilreg::session {

namespace {

using json = nlohmann::ordered_json;

json strings(const std::vector<Polynomial>& ps, std::span<const std::string> names) {
  json out = json::array();
  for (const auto& p : ps) out.push_back(to_string(p, names));
  return out;
}

json ideal_json(const Ideal& i, std::span<const std::string> names) {
  return strings(i.groebner_basis(MonomialOrder::grevlex()), names);
}

json check_json(const CheckResult& c) {
  json out;
  out["pass"] = c.pass;
  out["detail"] = c.detail;
  out["witness"] = c.witness;
  return out;
}

Scalar parse_scalar(const std::string& text) {
  try {
    Scalar s(text);
    if (s.get_den() == 0) throw ParseError("zero denominator in '" + text + "'");
    s.canonicalize();
    return s;
  } catch (const std::invalid_argument&) {
    throw ParseError("not a rational number: '" + text + "'");
  }
}

/// "(1, 2)" or "3" as a list of scalars.
std::vector<Scalar> parse_point(const std::string& text) {
  std::vector<Scalar> out;
  if (!text.empty() && text.front() == '(') {
    std::string inner = text.substr(1, text.size() - 2), cur;
    for (char c : inner) {
      if (c == ',') {
        out.push_back(parse_scalar(cur));
        cur.clear();
      } else if (c != ' ') {
        cur += c;
      }
    }
    out.push_back(parse_scalar(cur));
  } else {
    out.push_back(parse_scalar(text));
  }
  return out;
}

class Environment {
 public:
  void build(const Statement& st) {
    std::visit([this](const auto& d) { this->add(d); }, st.node);
  }

  const std::string& session_name() const { return session_; }

  const AffineVariety& variety(const std::string& n) const { return get(varieties_, n); }
  const RationalMap& map(const std::string& n) const { return get(maps_, n); }
  const RationalAction& action(const std::string& n) const { return get(actions_, n); }
  const OpenSubset& open(const std::string& n) const { return get(opens_, n); }
  /// A variety (as the whole open subset) or an open subset.
  OpenSubset space(const std::string& n) const {
    if (auto it = failures_.find(n); it != failures_.end()) std::rethrow_exception(it->second);
    if (auto it = opens_.find(n); it != opens_.end()) return it->second;
    return OpenSubset(get(varieties_, n));
  }

 private:
  template <class T>
  const T& get(const std::map<std::string, T>& m, const std::string& n) const {
    if (auto it = failures_.find(n); it != failures_.end()) std::rethrow_exception(it->second);
    auto it = m.find(n);
    if (it == m.end()) throw KindMismatch("'" + n + "' has the wrong kind");
    return it->second;
  }

  template <class F>
  void guarded(const std::string& name, F&& f) {
    try {
      f();
    } catch (...) {
      failures_[name] = std::current_exception();
    }
  }

  void add(const SessionName& d) { session_ = d.name; }
  void add(const VarDecl&) {}
  void add(const Command&) {}

  void add(const VarietyDecl& d) {
    guarded(d.name, [&] { varieties_.emplace(d.name, AffineVariety::parse(d.vars, d.ideal, !d.reducible)); });
  }

  void add(const OpenDecl& d) {
    guarded(d.name, [&] {
      const AffineVariety& host = variety(d.variety);
      std::vector<Polynomial> w;
      for (const auto& e : d.witnesses) w.push_back(host.parse_poly(e));
      OpenSubset u(host, std::move(w));
      if (u.is_empty()) throw EmptyOpen("'" + d.name + "' is empty");
      opens_.emplace(d.name, std::move(u));
    });
  }

  static Representative parse_tuple(const Tuple& t, std::span<const std::string> names) {
    Representative r;
    for (const auto& e : t) r.push_back(parse_fraction(e, names, false));
    return r;
  }

  void add(const MapDecl& d) {
    guarded(d.name, [&] {
      OpenSubset src = space(d.source), tgt = space(d.target);
      std::vector<Representative> reps;
      for (const auto& t : d.reps) reps.push_back(parse_tuple(t, src.host().vars()));
      maps_.emplace(d.name, make_rational_map(src, tgt, std::move(reps)));
    });
  }

  void add(const GroupDecl& d) {
    guarded(d.name, [&] {
      AlgebraicGroup g;
      if (d.kind == "Ga") {
        g = AlgebraicGroup::additive(d.args[0]);
      } else if (d.kind == "Gm") {
        g = AlgebraicGroup::multiplicative(d.args[0], d.args[1]);
      } else if (d.kind == "product") {
        g = AlgebraicGroup::product(get(groups_, d.args[0]), get(groups_, d.args[1]));
      } else {
        std::map<std::string, std::size_t> index;
        for (std::size_t i = 0; i < d.args.size(); ++i) index.emplace(d.args[i], i);
        std::vector<std::vector<std::size_t>> table;
        for (const auto& row : d.table) {
          table.emplace_back();
          for (const auto& e : row) {
            auto it = index.find(e);
            if (it == index.end()) throw AxiomFailure("table entry '" + e + "' is not an element");
            table.back().push_back(it->second);
          }
        }
        g = AlgebraicGroup::finite(d.args, std::move(table));
      }
      groups_.emplace(d.name, std::move(g));
    });
  }

  void add(const ActionDecl& d) {
    guarded(d.name, [&] {
      const AlgebraicGroup& g = get(groups_, d.group);
      OpenSubset x = space(d.space);
      if (g.is_finite()) {
        if (d.per_element.empty()) throw KindMismatch("a finite group acts through one tuple per element");
        std::vector<std::optional<Representative>> per(g.order());
        for (const auto& [name, tuple] : d.per_element) {
          std::size_t e = g.index_of(name);
          if (per[e]) throw NotAnAction("element '" + name + "' is given twice");
          per[e] = parse_tuple(tuple, x.host().vars());
        }
        std::vector<RationalMap> maps;
        for (std::size_t e = 0; e < g.order(); ++e) {
          if (!per[e]) throw NotAnAction("no tuple for element '" + g.elements()[e] + "'");
          maps.push_back(make_rational_map(x, x, {*per[e]}));
        }
        actions_.emplace(d.name, make_rational_action(g, x, std::move(maps)));
      } else {
        if (d.reps.empty()) throw KindMismatch("a parametric group acts through a tuple on G x X");
        const auto names = product(g.variety(), x.host()).vars();
        std::vector<Representative> reps;
        for (const auto& t : d.reps) reps.push_back(parse_tuple(t, names));
        actions_.emplace(d.name, make_rational_action(g, x, reps));
      }
    });
  }

  std::string session_;
  std::map<std::string, AffineVariety> varieties_;
  std::map<std::string, OpenSubset> opens_;
  std::map<std::string, RationalMap> maps_;
  std::map<std::string, AlgebraicGroup> groups_;
  std::map<std::string, RationalAction> actions_;
  std::map<std::string, std::exception_ptr> failures_;
};

struct Outcome {
  std::string status = "ok";
  json payload = json::object();
};

std::vector<std::string> names_of(const AffineVariety& a, const AffineVariety& b) { return product(a, b).vars(); }

RationalAction action_on(const Environment& env, const Command& c) {
  const RationalAction& a = env.action(c.refs.at(0));
  if (!c.on) return a;
  return restrict_to_open(a, env.open(*c.on));
}

Outcome execute(const Environment& env, const Command& c) {
  Outcome out;
  json& p = out.payload;
  const std::string& k = c.keyword;
  if (k == "dom" || k == "breg") {
    const RationalMap& m = env.map(c.refs[0]);
    OpenSubset locus = k == "dom" ? definable_locus(m) : biregular_locus(m);
    p["complement"] = ideal_json(locus.complement(), m.source().host().vars());
  } else if (k == "graph") {
    const RationalMap& m = env.map(c.refs[0]);
    p["ideal"] = ideal_json(graph_closure(m), names_of(m.source().host(), m.target().host()));
  } else if (k == "image") {
    const RationalMap& m = env.map(c.refs[0]);
    p["ideal"] = ideal_json(closed_image(m), m.target().host().vars());
  } else if (k == "invert") {
    p["map"] = inverse(env.map(c.refs[0])).print();
  } else if (k == "compose") {
    p["map"] = compose(env.map(c.refs[0]), env.map(c.refs[1])).print();
  } else if (k == "closedgraph") {
    const RationalMap& m = env.map(c.refs[0]);
    OpenSubset host = c.on ? env.open(*c.on) : m.source();
    auto r = is_graph_closed(m, host);
    p["closed"] = r.closed;
    p["witness"] = r.witness ? ideal_json(*r.witness, names_of(host.host(), host.host())) : json::array();
    if (!r.closed) out.status = "fail";
  } else if (k == "checkaction") {
    const RationalAction& a = env.action(c.refs[0]);
    p["group"] = a.group().describe();
    p["laws"] = "verified";
  } else if (k == "xreg") {
    RationalAction a = action_on(env, c);
    auto reg = g_regular_locus(a);
    p["complement"] = ideal_json(reg.locus.complement(), a.space().host().vars());
    if (reg.exceptional) p["exceptional"] = ideal_json(*reg.exceptional, a.product_space().host().vars());
  } else if (k == "regularize") {
    RationalAction a = action_on(env, c);
    auto model = regularize_finite(a);
    const auto& xnames = a.space().host().vars();
    json gens = json::array();
    for (const auto& g : model.generators) gens.push_back(to_string(g, xnames));
    p["generators"] = gens;
    p["presentation"] = ideal_json(model.presentation.y.ideal(), model.presentation.y.vars());
    p["psi"] = model.presentation.psi.print();
    p["psi_inverse"] = model.presentation.psi_inverse.print();
    json table = json::object();
    for (std::size_t g = 0; g < model.endomorphisms.size(); ++g) {
      Representative r;
      for (const auto& e : model.endomorphisms[g]) r.push_back(Fraction::of(e));
      std::string t = "(";
      for (std::size_t j = 0; j < r.size(); ++j) t += (j ? ", " : "") + to_string(r[j], model.presentation.y.vars());
      table[a.group().elements()[g]] = t + ")";
    }
    p["action"] = table;
  } else if (k == "atlas") {
    RationalAction a = action_on(env, c);
    Atlas atlas;
    if (a.is_finite()) {
      std::vector<std::size_t> elements;
      for (const auto& s : c.points) elements.push_back(a.group().index_of(s));
      atlas = build_atlas(a, elements);
    } else {
      std::vector<std::vector<Scalar>> points;
      for (const auto& s : c.points) points.push_back(parse_point(s));
      atlas = build_atlas(a, points);
    }
    auto report = check_atlas(atlas);
    p["charts"] = atlas.labels;
    json transitions = json::array();
    for (const auto& row : atlas.transitions) {
      json r = json::array();
      for (const auto& t : row) r.push_back(t.print());
      transitions.push_back(r);
    }
    p["transitions"] = transitions;
    p["symmetry"] = check_json(report.symmetry);
    p["cocycle"] = check_json(report.cocycle);
    p["separated"] = check_json(report.separated);
    p["covering"] = check_json(report.covering);
    p["covering_ideal"] = report.covering_ideal;
    if (!report.all_pass()) out.status = "fail";
  } else if (k == "certify" && c.expr.empty()) {
    const RationalAction& a = env.action(c.refs[0]);
    std::vector<std::vector<Scalar>> sample;
    for (const auto& s : c.points) sample.push_back(parse_point(s));
    auto cert = regularity_from_subgroup(a, sample);
    p["regular"] = true;
    p["coordinates"] = strings(cert.coordinates, a.product_space().host().vars());
  } else if (k == "certify") {
    const AffineVariety& x = env.variety(c.refs[0]);
    const AffineVariety& y = env.variety(c.refs[1]);
    const auto names = names_of(x, y);
    Fraction big_f = parse_fraction(c.expr, names, false);
    Polynomial f = y.parse_poly(c.by);
    std::vector<std::vector<Scalar>> candidates;
    for (const auto& s : c.points) candidates.push_back(parse_point(s));
    if (c.points.empty()) candidates = candidate_points(x, 64);
    auto d = certify_regular(x, y, big_f, f, candidates);
    p["k"] = d.k;
    json terms = json::array();
    for (std::size_t i = 0; i < d.h.size(); ++i) terms.push_back({x.print(d.h[i]), y.print(d.fy[i])});
    p["terms"] = terms;
    json samples = json::array();
    for (const auto& s : d.samples) {
      std::string t = "(";
      for (std::size_t i = 0; i < s.size(); ++i) t += (i ? ", " : "") + to_string(s[i]);
      samples.push_back(t + ")");
    }
    p["samples"] = samples;
    p["slices"] = strings(d.slices, y.vars());
    json coeffs = json::array();
    for (const auto& row : d.coefficients) {
      json r = json::array();
      for (const auto& v : row) r.push_back(to_string(v));
      coeffs.push_back(r);
    }
    p["coefficients"] = coeffs;
    p["regular_form"] = to_string(*d.regular_form, names);
  }
  return out;
}

Record run_one(const Environment& env, const Command& c, const RunOptions& options) {
  std::optional<ScopedGroebnerBudget> budget;
  if (options.max_groebner_steps) budget.emplace(options.max_groebner_steps);
  Record r;
  r.command = command_text(c);
  if (options.log) options.log("running: " + r.command);
  const auto steps0 = groebner_steps_taken();
  const auto t0 = std::chrono::steady_clock::now();
  try {
    Outcome o = execute(env, c);
    r.status = o.status;
    r.payload = std::move(o.payload);
  } catch (const Error& e) {
    r.status = dynamic_cast<const VerdictError*>(&e) ? "fail" : "error";
    r.payload = json::object();
    std::string message = e.what();
    if (message.rfind(e.kind() + ": ", 0) == 0) message.erase(0, e.kind().size() + 2);
    r.payload["error"] = {{"kind", e.kind()}, {"message", message}};
  } catch (const std::exception& e) {
    r.status = "error";
    r.payload = json::object();
    r.payload["error"] = {{"kind", "Internal"}, {"message", e.what()}};
  }
  const auto t1 = std::chrono::steady_clock::now();
  r.millis = std::round(std::chrono::duration<double, std::milli>(t1 - t0).count() * 1000.0) / 1000.0;
  r.groebner_steps = groebner_steps_taken() - steps0;
  if (options.log) options.log(r.status + ": " + r.command);
  return r;
}

}  // namespace

Report run_session(const SessionAST& ast, const RunOptions& options) {
  Report report;
  Environment env;
  std::vector<const Command*> commands;
  {
    std::optional<ScopedGroebnerBudget> budget;
    if (options.max_groebner_steps) budget.emplace(options.max_groebner_steps);
    for (const auto& st : ast.statements) {
      env.build(st);
      if (const auto* c = std::get_if<Command>(&st.node)) commands.push_back(c);
    }
  }
  report.session = env.session_name();
  if (options.parallel) {
    std::vector<std::future<Record>> futures;
    for (const auto* c : commands)
      futures.push_back(std::async(std::launch::async, [&env, c, &options] { return run_one(env, *c, options); }));
    for (auto& f : futures) report.records.push_back(f.get());
  } else {
    for (const auto* c : commands) report.records.push_back(run_one(env, *c, options));
  }
  return report;
}

bool Report::has_error() const {
  for (const auto& r : records)
    if (r.status == "error") return true;
  return false;
}

}  // namespace weilreg::session
