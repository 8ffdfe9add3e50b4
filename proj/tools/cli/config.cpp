// SPDX-License-Identifier: Apache-2.0

#include "cli/config.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <set>

#include "rsrr/errors.hpp"
#include "rsrr/matrix_market.hpp"

namespace rsrr::app
{

namespace
{

std::string join(const std::string &path, const std::string &key)
{
  return path.empty() ? key : path + "." + key;
}

// Object reader that remembers which keys were consumed so leftovers can be rejected.
class Reader
{
public:
  Reader(const json &j, std::string path) : j_(j), path_(std::move(path))
  {
    if (!j_.is_object())
    {
      throw ConfigError(path_.empty() ? "<root>" : path_, "expected an object");
    }
  }

  const std::string &path() const { return path_; }
  std::string at(const std::string &key) const { return join(path_, key); }

  const json *find(const std::string &key)
  {
    used_.insert(key);
    auto it = j_.find(key);
    return it == j_.end() ? nullptr : &*it;
  }

  const json &need(const std::string &key)
  {
    const json *v = find(key);
    if (!v)
    {
      throw ConfigError(at(key), "required field is missing");
    }
    return *v;
  }

  double number(const std::string &key, double fallback)
  {
    const json *v = find(key);
    return v ? as_number(*v, at(key)) : fallback;
  }

  Index integer(const std::string &key, Index fallback)
  {
    const json *v = find(key);
    return v ? as_integer(*v, at(key)) : fallback;
  }

  std::string string(const std::string &key, const std::string &fallback)
  {
    const json *v = find(key);
    return v ? as_string(*v, at(key)) : fallback;
  }

  bool boolean(const std::string &key, bool fallback)
  {
    const json *v = find(key);
    if (!v)
    {
      return fallback;
    }
    if (!v->is_boolean())
    {
      throw ConfigError(at(key), "expected true or false");
    }
    return v->get<bool>();
  }

  Complex complex(const std::string &key, Complex fallback)
  {
    const json *v = find(key);
    return v ? as_complex(*v, at(key)) : fallback;
  }

  void finish() const
  {
    for (auto it = j_.begin(); it != j_.end(); ++it)
    {
      if (!used_.count(it.key()))
      {
        throw ConfigError(at(it.key()), "unknown key");
      }
    }
  }

  static double as_number(const json &v, const std::string &path)
  {
    if (!v.is_number())
    {
      throw ConfigError(path, "expected a number");
    }
    const double x = v.get<double>();
    if (!std::isfinite(x))
    {
      throw ConfigError(path, "must be finite");
    }
    return x;
  }

  static Index as_integer(const json &v, const std::string &path)
  {
    if (!v.is_number_integer())
    {
      throw ConfigError(path, "expected an integer");
    }
    return v.get<Index>();
  }

  static std::string as_string(const json &v, const std::string &path)
  {
    if (!v.is_string())
    {
      throw ConfigError(path, "expected a string");
    }
    return v.get<std::string>();
  }

  static Complex as_complex(const json &v, const std::string &path)
  {
    if (v.is_number())
    {
      return {as_number(v, path), 0.0};
    }
    if (v.is_array() && v.size() == 2)
    {
      return {as_number(v[0], path + "[0]"), as_number(v[1], path + "[1]")};
    }
    throw ConfigError(path, "expected a number or [re, im]");
  }

private:
  const json &j_;
  std::string path_;
  std::set<std::string> used_;
};

json complex_json(Complex z)
{
  return json::array({z.real(), z.imag()});
}

std::vector<double> number_list(const json &v, const std::string &path)
{
  if (!v.is_array())
  {
    throw ConfigError(path, "expected an array of numbers");
  }
  std::vector<double> out;
  for (std::size_t i = 0; i < v.size(); i++)
  {
    out.push_back(Reader::as_number(v[i], path + "[" + std::to_string(i) + "]"));
  }
  return out;
}

void require(bool ok, const std::string &path, const std::string &message)
{
  if (!ok)
  {
    throw ConfigError(path, message);
  }
}

Atom parse_atom(const json &j, const std::string &path)
{
  Reader r(j, path);
  const std::string type = r.string("type", "");
  Atom a;
  a.coef = r.complex("coef", 1.0);
  if (type == "constant")
  {
    a.kind = atom::Constant{};
  }
  else if (type == "power")
  {
    const Index k = r.integer("k", 1);
    require(k >= 0 && k <= 64, r.at("k"), "must lie in [0, 64]");
    a.kind = atom::Power{static_cast<int>(k)};
  }
  else if (type == "rational")
  {
    a.kind = atom::Rational{r.number("b", 1.0)};
  }
  else if (type == "sqrt")
  {
    const double sigma = r.number("sigma", 0.0);
    require(sigma >= 0.0, r.at("sigma"), "must be >= 0");
    a.kind = atom::ShiftedSqrt{sigma};
  }
  else if (type == "chebyshev")
  {
    const Index jj = r.integer("j", 0);
    const double lo = r.number("lo", -1.0), hi = r.number("hi", 1.0);
    require(jj >= 0, r.at("j"), "must be >= 0");
    require(lo < hi, r.at("hi"), "must exceed lo");
    a.kind = atom::ChebyshevBasis{static_cast<int>(jj), lo, hi};
  }
  else
  {
    throw ConfigError(r.at("type"), "expected constant, power, rational, sqrt or chebyshev");
  }
  r.finish();
  return a;
}

json atom_json(const Atom &a)
{
  json j;
  j["coef"] = complex_json(a.coef);
  std::visit(
      [&](const auto &k)
      {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, atom::Constant>)
        {
          j["type"] = "constant";
        }
        else if constexpr (std::is_same_v<T, atom::Power>)
        {
          j["type"] = "power";
          j["k"] = k.k;
        }
        else if constexpr (std::is_same_v<T, atom::Rational>)
        {
          j["type"] = "rational";
          j["b"] = k.b;
        }
        else if constexpr (std::is_same_v<T, atom::ShiftedSqrt>)
        {
          j["type"] = "sqrt";
          j["sigma"] = k.sigma;
        }
        else
        {
          j["type"] = "chebyshev";
          j["j"] = k.j;
          j["lo"] = k.lo;
          j["hi"] = k.hi;
        }
      },
      a.kind);
  return j;
}

ProblemSpec parse_problem(const json &j)
{
  Reader r(j, "problem");
  const std::string type = Reader::as_string(r.need("type"), "problem.type");
  ProblemSpec spec;
  if (type == "acoustic1d")
  {
    Acoustic1dSpec s;
    s.n = r.integer("n", s.n);
    s.zeta = r.complex("zeta", s.zeta);
    require(s.n >= 2, "problem.n", "must be >= 2");
    require(std::abs(s.zeta) > 0.0, "problem.zeta", "must be nonzero");
    spec = s;
  }
  else if (type == "string")
  {
    StringSpec s;
    s.n = r.integer("n", s.n);
    require(s.n >= 2, "problem.n", "must be >= 2");
    const std::string end = r.string("end", "nlevp");
    if (end == "nlevp")
    {
      s.end = problems::StringEnd::Nlevp;
    }
    else if (end == "displayed")
    {
      s.end = problems::StringEnd::Displayed;
    }
    else
    {
      throw ConfigError("problem.end", "expected nlevp or displayed");
    }
    spec = s;
  }
  else if (type == "linear-oracle")
  {
    LinearOracleSpec s;
    s.n = r.integer("n", s.n);
    s.inside = r.integer("inside", s.inside);
    const Index seed = r.integer("seed", static_cast<Index>(s.seed));
    require(s.n >= 1, "problem.n", "must be >= 1");
    require(s.inside >= 0 && s.inside <= s.n, "problem.inside", "must lie in [0, n]");
    require(seed >= 0, "problem.seed", "must be >= 0");
    s.seed = static_cast<std::uint64_t>(seed);
    spec = s;
  }
  else if (type == "gun")
  {
    GunSpec s;
    s.data_dir = r.string("data_dir", "");
    s.sigma1 = r.number("sigma1", s.sigma1);
    s.sigma2 = r.number("sigma2", s.sigma2);
    require(s.sigma1 >= 0.0, "problem.sigma1", "must be >= 0");
    require(s.sigma2 >= 0.0, "problem.sigma2", "must be >= 0");
    spec = s;
  }
  else if (type == "biot")
  {
    BiotSpec s;
    s.M = Reader::as_string(r.need("M"), "problem.M");
    s.K_v = Reader::as_string(r.need("K_v"), "problem.K_v");
    s.K_s = Reader::as_string(r.need("K_s"), "problem.K_s");
    s.G_inf = r.number("G_inf", s.G_inf);
    if (const json *a = r.find("a"))
    {
      s.a = number_list(*a, "problem.a");
    }
    if (const json *b = r.find("b"))
    {
      s.b = number_list(*b, "problem.b");
    }
    s.leading_one = r.boolean("leading_one", s.leading_one);
    require(!s.a.empty() && s.a.size() == s.b.size(), "problem.b",
            "a and b must be nonempty and of equal length");
    for (std::size_t k = 0; k < s.b.size(); k++)
    {
      require(s.b[k] > 0.0, "problem.b[" + std::to_string(k) + "]", "must be positive");
    }
    spec = s;
  }
  else if (type == "sum")
  {
    SumSpec s;
    const json &terms = r.need("terms");
    require(terms.is_array() && !terms.empty(), "problem.terms", "expected a nonempty array");
    for (std::size_t i = 0; i < terms.size(); i++)
    {
      const std::string path = "problem.terms[" + std::to_string(i) + "]";
      Reader t(terms[i], path);
      SumTermSpec term;
      term.matrix = Reader::as_string(t.need("matrix"), t.at("matrix"));
      const json &f = t.need("f");
      std::vector<Atom> atoms;
      if (f.is_array())
      {
        require(!f.empty(), t.at("f"), "expected at least one function atom");
        for (std::size_t k = 0; k < f.size(); k++)
        {
          atoms.push_back(parse_atom(f[k], t.at("f") + "[" + std::to_string(k) + "]"));
        }
      }
      else
      {
        atoms.push_back(parse_atom(f, t.at("f")));
      }
      term.f = ScalarFunction(std::move(atoms));
      t.finish();
      s.terms.push_back(std::move(term));
    }
    spec = s;
  }
  else
  {
    throw ConfigError("problem.type",
                      "unknown problem '" + type +
                          "' (expected acoustic1d, string, linear-oracle, gun, biot or sum)");
  }
  r.finish();
  return spec;
}

Contour parse_contour(const json &j)
{
  Reader r(j, "contour");
  const std::string shape = r.string("shape", "ellipse");
  if (shape == "ellipse")
  {
    const Complex center = r.complex("center", 0.0);
    const double a = Reader::as_number(r.need("a"), "contour.a");
    const double b = Reader::as_number(r.need("b"), "contour.b");
    require(a > 0.0, "contour.a", "semi-axis must be positive");
    require(b > 0.0, "contour.b", "semi-axis must be positive");
    r.finish();
    return Contour::ellipse(center, a, b);
  }
  if (shape == "rectangle")
  {
    const Complex ll = Reader::as_complex(r.need("lower_left"), "contour.lower_left");
    const Complex ur = Reader::as_complex(r.need("upper_right"), "contour.upper_right");
    const Index nl = r.integer("n_long", 10), ns = r.integer("n_short", 5);
    require(ur.real() > ll.real(), "contour.upper_right", "width must be positive");
    require(ur.imag() > ll.imag(), "contour.upper_right", "height must be positive");
    require(nl >= 1, "contour.n_long", "must be >= 1");
    require(ns >= 1, "contour.n_short", "must be >= 1");
    r.finish();
    return Contour::rectangle(ll, ur, static_cast<int>(nl), static_cast<int>(ns));
  }
  throw ConfigError("contour.shape", "expected ellipse or rectangle");
}

void parse_rsrr(const json &j, RsrrConfig &c)
{
  Reader r(j, "rsrr");
  c.L = r.integer("L", c.L);
  c.N = r.integer("N", c.contour.is_ellipse() ? c.N : 0);
  c.delta = r.number("delta", c.delta);
  c.K = r.integer("K", c.K);
  c.N_S = r.integer("N_S", c.N_S);
  c.tol_gap = r.number("tol_gap", c.tol_gap);
  c.residual_flag = r.number("residual_tol", c.residual_flag);
  c.residual_target = r.number("residual_target", c.residual_target);
  const Index seed = r.integer("seed", static_cast<Index>(c.seed));
  const std::string mode = r.string("mode", to_string(c.mode));
  c.cheb_degree = r.integer("cheb_degree", c.cheb_degree);
  c.K_prime = r.integer("K_prime", c.K_prime);
  const std::string basis = r.string("moment_basis", to_string(c.moment_basis));
  r.finish();

  require(c.L >= 1, "rsrr.L", "must be >= 1");
  if (c.contour.is_ellipse())
  {
    require(c.N >= 1, "rsrr.N", "must be >= 1");
  }
  else
  {
    require(c.N == 0 || c.N == c.contour.natural_size(), "rsrr.N",
            "must be 0 or 2 (n_long + n_short) = " + std::to_string(c.contour.natural_size()));
  }
  require(c.delta > 0.0 && c.delta < 1.0, "rsrr.delta", "must lie in (0, 1)");
  require(c.K >= 1, "rsrr.K", "must be >= 1");
  require(c.N_S >= 2 * c.K, "rsrr.N_S", "must be >= 2K");
  require(c.tol_gap > 1.0, "rsrr.tol_gap", "must be > 1");
  require(c.residual_flag > 0.0, "rsrr.residual_tol", "must be positive");
  require(c.residual_target > 0.0, "rsrr.residual_target", "must be positive");
  require(seed >= 0, "rsrr.seed", "must be >= 0");
  c.seed = static_cast<std::uint64_t>(seed);
  try
  {
    c.mode = reduction_mode_from_string(mode);
  }
  catch (const InvalidParameter &)
  {
    throw ConfigError("rsrr.mode", "expected auto, explicit-sum or chebyshev");
  }
  require(c.cheb_degree >= 1, "rsrr.cheb_degree", "must be >= 1");
  require(c.K_prime >= 0, "rsrr.K_prime", "must be >= 0");
  try
  {
    c.moment_basis = moment_basis_from_string(basis);
  }
  catch (const InvalidParameter &)
  {
    throw ConfigError("rsrr.moment_basis", "expected monomial or chebyshev");
  }
}

std::filesystem::path resolve(const RunConfig &cfg, const std::string &p)
{
  const std::filesystem::path path(p);
  return path.is_absolute() ? path : cfg.base_dir / path;
}

SparseMatrix load_field(const RunConfig &cfg, const std::string &file, const std::string &field)
{
  const auto path = resolve(cfg, file);
  if (!std::filesystem::exists(path))
  {
    throw ConfigError(field, "file not found: " + path.string());
  }
  try
  {
    return mm::load_matrix_market_sparse(path.string());
  }
  catch (const Error &e)
  {
    throw ConfigError(field, path.string() + ": " + e.what());
  }
}

}  // namespace

RunConfig parse_config(const json &doc, const std::filesystem::path &base_dir)
{
  RunConfig cfg;
  cfg.base_dir = base_dir;
  Reader r(doc, "");
  cfg.problem = parse_problem(r.need("problem"));
  cfg.rsrr.contour = parse_contour(r.need("contour"));
  if (const json *j = r.find("rsrr"))
  {
    parse_rsrr(*j, cfg.rsrr);
  }
  else
  {
    parse_rsrr(json::object(), cfg.rsrr);
  }
  if (const json *j = r.find("output"))
  {
    Reader o(*j, "output");
    cfg.output.report = o.string("report", "");
    cfg.output.csv = o.string("csv", "");
    cfg.output.eigenvectors = o.string("eigenvectors", "");
    o.finish();
  }
  if (const json *j = r.find("compare"))
  {
    Reader c(*j, "compare");
    if (const json *s = c.find("k_prime_sweep"))
    {
      require(s->is_array(), "compare.k_prime_sweep", "expected an array of integers");
      for (std::size_t i = 0; i < s->size(); i++)
      {
        const std::string path = "compare.k_prime_sweep[" + std::to_string(i) + "]";
        const Index k = Reader::as_integer((*s)[i], path);
        require(k >= 1, path, "must be >= 1");
        cfg.compare.k_prime_sweep.push_back(k);
      }
    }
    c.finish();
  }
  r.finish();
  return cfg;
}

RunConfig load_config(const std::filesystem::path &path)
{
  std::ifstream in(path);
  if (!in)
  {
    throw ConfigError("<file>", "cannot open " + path.string());
  }
  json doc;
  try
  {
    doc = json::parse(in);
  }
  catch (const json::parse_error &e)
  {
    throw ConfigError("<file>", std::string("invalid JSON: ") + e.what());
  }
  return parse_config(doc, path.has_parent_path() ? path.parent_path() : ".");
}

std::string problem_type(const ProblemSpec &spec)
{
  static const char *names[] = {"acoustic1d", "string", "linear-oracle", "gun", "biot", "sum"};
  return names[spec.index()];
}

json contour_to_json(const Contour &contour)
{
  json j;
  if (const auto *e = std::get_if<EllipseShape>(&contour.shape()))
  {
    j["shape"] = "ellipse";
    j["center"] = complex_json(e->center);
    j["a"] = e->a;
    j["b"] = e->b;
  }
  else
  {
    const auto &r = std::get<RectangleShape>(contour.shape());
    j["shape"] = "rectangle";
    j["lower_left"] = complex_json(r.lower_left);
    j["upper_right"] = complex_json(r.upper_right);
    j["n_long"] = r.n_long;
    j["n_short"] = r.n_short;
  }
  return j;
}

json to_json(const RunConfig &config)
{
  json doc;
  json p;
  p["type"] = problem_type(config.problem);
  std::visit(
      [&](const auto &s)
      {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Acoustic1dSpec>)
        {
          p["n"] = s.n;
          p["zeta"] = complex_json(s.zeta);
        }
        else if constexpr (std::is_same_v<T, StringSpec>)
        {
          p["n"] = s.n;
          p["end"] = s.end == problems::StringEnd::Nlevp ? "nlevp" : "displayed";
        }
        else if constexpr (std::is_same_v<T, LinearOracleSpec>)
        {
          p["n"] = s.n;
          p["inside"] = s.inside;
          p["seed"] = s.seed;
        }
        else if constexpr (std::is_same_v<T, GunSpec>)
        {
          p["data_dir"] = s.data_dir;
          p["sigma1"] = s.sigma1;
          p["sigma2"] = s.sigma2;
        }
        else if constexpr (std::is_same_v<T, BiotSpec>)
        {
          p["M"] = s.M;
          p["K_v"] = s.K_v;
          p["K_s"] = s.K_s;
          p["G_inf"] = s.G_inf;
          p["a"] = s.a;
          p["b"] = s.b;
          p["leading_one"] = s.leading_one;
        }
        else
        {
          json terms = json::array();
          for (const auto &t : s.terms)
          {
            json f = json::array();
            for (const auto &a : t.f.atoms())
            {
              f.push_back(atom_json(a));
            }
            terms.push_back({{"matrix", t.matrix}, {"f", f}});
          }
          p["terms"] = terms;
        }
      },
      config.problem);
  doc["problem"] = p;
  doc["contour"] = contour_to_json(config.rsrr.contour);

  const RsrrConfig &c = config.rsrr;
  doc["rsrr"] = {{"L", c.L},
                 {"N", c.N},
                 {"delta", c.delta},
                 {"K", c.K},
                 {"N_S", c.N_S},
                 {"tol_gap", c.tol_gap},
                 {"residual_tol", c.residual_flag},
                 {"residual_target", c.residual_target},
                 {"seed", c.seed},
                 {"mode", to_string(c.mode)},
                 {"cheb_degree", c.cheb_degree},
                 {"K_prime", c.K_prime},
                 {"moment_basis", to_string(c.moment_basis)}};
  doc["output"] = {{"report", config.output.report},
                   {"csv", config.output.csv},
                   {"eigenvectors", config.output.eigenvectors}};
  doc["compare"] = {{"k_prime_sweep", config.compare.k_prime_sweep}};
  return doc;
}

std::unique_ptr<NepProblem> make_problem(const RunConfig &config)
{
  return std::visit(
      [&](const auto &s) -> std::unique_ptr<NepProblem>
      {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Acoustic1dSpec>)
        {
          return std::make_unique<SumFormNep>(problems::make_acoustic_1d(s.n, s.zeta));
        }
        else if constexpr (std::is_same_v<T, StringSpec>)
        {
          return std::make_unique<SumFormNep>(problems::make_loaded_string(s.n, s.end));
        }
        else if constexpr (std::is_same_v<T, LinearOracleSpec>)
        {
          const auto oracle = problems::make_linear_oracle(s.n, s.inside, s.seed);
          return std::make_unique<SumFormNep>(problems::make_linear_pencil(oracle.A));
        }
        else if constexpr (std::is_same_v<T, GunSpec>)
        {
          std::string dir = s.data_dir;
          if (dir.empty())
          {
            const char *env = std::getenv(GUN_DATA_ENV);
            dir = env ? env : "";
          }
          if (dir.empty())
          {
            throw ConfigError("problem.data_dir", std::string("gun matrices need a data directory (or ") +
                                                      GUN_DATA_ENV + ")");
          }
          const auto root = resolve(config, dir);
          auto load = [&](const std::string &name)
          {
            const auto file = std::filesystem::absolute(root / ("gun_" + name + ".mtx"));
            return load_field(config, file.string(), "problem.data_dir");
          };
          return std::make_unique<SumFormNep>(problems::make_gun_form(
              load("K"), load("M"), load("W1"), load("W2"), s.sigma1, s.sigma2));
        }
        else if constexpr (std::is_same_v<T, BiotSpec>)
        {
          return std::make_unique<SumFormNep>(problems::make_biot_damped(
              load_field(config, s.M, "problem.M"), load_field(config, s.K_v, "problem.K_v"),
              load_field(config, s.K_s, "problem.K_s"), s.G_inf, s.a, s.b, s.leading_one));
        }
        else
        {
          std::vector<SumFormNep::Term> terms;
          for (std::size_t i = 0; i < s.terms.size(); i++)
          {
            const std::string field = "problem.terms[" + std::to_string(i) + "].matrix";
            terms.push_back({load_field(config, s.terms[i].matrix, field), s.terms[i].f, "T" + std::to_string(i + 1)});
          }
          try
          {
            return std::make_unique<SumFormNep>(std::move(terms), "sum");
          }
          catch (const DimensionMismatch &e)
          {
            throw ConfigError("problem.terms", e.what());
          }
        }
      },
      config.problem);
}

}  // namespace rsrr::app
