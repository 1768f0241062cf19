#include "bjgeo/space.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "bjgeo/detail/linalg.hpp"
#include "bjgeo/rng.hpp"

namespace bjgeo {

namespace {

using detail::matrix_rank;
using detail::solve_square;

constexpr double kInf = std::numeric_limits<double>::infinity();

void sort_dedup(std::vector<Vector>& vs, double tol) {
  std::sort(vs.begin(), vs.end(), lex_less);
  std::vector<Vector> out;
  for (auto& v : vs) {
    bool dup = false;
    for (const auto& u : out) {
      if (max_abs_diff(u, v) <= tol) {
        dup = true;
        break;
      }
    }
    if (!dup) out.push_back(std::move(v));
  }
  vs = std::move(out);
}

// Vertex enumeration for B = {x : f(x) <= 1 for every facet f}: intersect
// every dim-subset of facet hyperplanes {f(x) = 1} and keep feasible points.
std::vector<Vector> enumerate_vertices(const std::vector<Vector>& facets, int dim) {
  const int m = int(facets.size());
  std::vector<int> idx(dim);
  std::vector<Vector> vertices;
  std::vector<int> comb;
  // iterative combination walk
  for (int i = 0; i < dim; ++i) idx[i] = i;
  if (m < dim) return vertices;
  while (true) {
    std::vector<Vector> M;
    M.reserve(dim);
    for (int i : idx) M.push_back(facets[i]);
    Vector x;
    if (solve_square(M, Vector(dim, 1.0), x)) {
      bool feasible = true;
      for (const auto& f : facets) {
        if (dot(f, x) > 1.0 + 1e-9) {
          feasible = false;
          break;
        }
      }
      if (feasible) vertices.push_back(std::move(x));
    }
    // next combination
    int i = dim - 1;
    while (i >= 0 && idx[i] == m - dim + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (int j = i + 1; j < dim; ++j) idx[j] = idx[j - 1] + 1;
  }
  sort_dedup(vertices, 1e-9);
  return vertices;
}

}  // namespace

struct Space::Node {
  SpaceKind kind;
  int dim = 0;
  double p = 0.0;                     // LpSmooth only
  std::vector<Vector> facets;         // Polyhedral (closed under negation)
  std::vector<Vector> vertices;       // Polyhedral ball vertices
  std::shared_ptr<const Node> left, right;

  Space left_space() const { return Space(left); }
  Space right_space() const { return Space(right); }
};

Space Space::lp(double p, int dim) {
  if (dim < 1) throw std::invalid_argument("space dimension must be >= 1");
  if (!(p >= 1.0)) throw std::invalid_argument("lp requires p >= 1");
  auto node = std::make_shared<Node>();
  node->dim = dim;
  if (p == 1.0) {
    node->kind = SpaceKind::L1;
    node->p = 1.0;
  } else if (std::isinf(p)) {
    node->kind = SpaceKind::LInf;
    node->p = kInf;
  } else {
    node->kind = SpaceKind::LpSmooth;
    node->p = p;
  }
  return Space(std::move(node));
}

Space Space::polyhedral(int dim, std::vector<Vector> facets) {
  if (dim < 1) throw std::invalid_argument("space dimension must be >= 1");
  if (facets.empty()) throw std::invalid_argument("polyhedral space needs at least one facet");
  for (const auto& f : facets) {
    require_same_dim(std::size_t(dim), f.size(), "facet");
    if (!all_finite(f)) throw std::invalid_argument("facet with non-finite entry");
  }
  // closure under negation
  std::vector<Vector> closed = facets;
  for (const auto& f : facets) closed.push_back(negated(f));
  sort_dedup(closed, 1e-12);
  if (matrix_rank(closed) < dim) {
    throw std::invalid_argument("facets do not span the dual space; the induced function is not a norm");
  }
  auto node = std::make_shared<Node>();
  node->kind = SpaceKind::Polyhedral;
  node->dim = dim;
  node->facets = std::move(closed);
  node->vertices = enumerate_vertices(node->facets, dim);
  if (node->vertices.empty()) {
    throw std::invalid_argument("facet description yields no ball vertices");
  }
  return Space(std::move(node));
}

Space Space::product(const Space& left, const Space& right) {
  auto node = std::make_shared<Node>();
  node->kind = SpaceKind::Product;
  node->dim = left.dim() + right.dim();
  node->left = left.node_;
  node->right = right.node_;
  return Space(std::move(node));
}

SpaceKind Space::kind() const { return node_->kind; }
int Space::dim() const { return node_->dim; }

double Space::p() const {
  switch (node_->kind) {
    case SpaceKind::L1: return 1.0;
    case SpaceKind::LInf: return kInf;
    case SpaceKind::LpSmooth: return node_->p;
    default: throw std::logic_error("p() is only defined for lp kinds");
  }
}

const std::vector<Vector>& Space::facets() const {
  if (node_->kind != SpaceKind::Polyhedral) throw std::logic_error("facets() requires a polyhedral space");
  return node_->facets;
}

Space Space::left() const {
  if (node_->kind != SpaceKind::Product) throw std::logic_error("left() requires a product space");
  return Space(node_->left);
}

Space Space::right() const {
  if (node_->kind != SpaceKind::Product) throw std::logic_error("right() requires a product space");
  return Space(node_->right);
}

bool Space::polyhedral_kind() const {
  switch (node_->kind) {
    case SpaceKind::L1:
    case SpaceKind::LInf:
    case SpaceKind::Polyhedral:
      return true;
    case SpaceKind::Product:
      return Space(node_->left).polyhedral_kind() && Space(node_->right).polyhedral_kind();
    default:
      return false;
  }
}

bool Space::smooth_kind() const {
  // dimension-1 spaces are smooth regardless of the formula used
  if (node_->dim == 1 && node_->kind != SpaceKind::Product) return true;
  return node_->kind == SpaceKind::LpSmooth;
}

double Space::norm(const Vector& x) const {
  require_same_dim(std::size_t(node_->dim), x.size(), "norm");
  switch (node_->kind) {
    case SpaceKind::L1: {
      double s = 0.0;
      for (double v : x) s += std::abs(v);
      return s;
    }
    case SpaceKind::LInf:
      return max_abs(x);
    case SpaceKind::LpSmooth: {
      double s = 0.0;
      for (double v : x) s += std::pow(std::abs(v), node_->p);
      return std::pow(s, 1.0 / node_->p);
    }
    case SpaceKind::Polyhedral: {
      double m = 0.0;
      for (const auto& f : node_->facets) m = std::max(m, dot(f, x));
      return m;
    }
    case SpaceKind::Product: {
      const int dl = node_->left->dim;
      Vector a(x.begin(), x.begin() + dl);
      Vector b(x.begin() + dl, x.end());
      return std::max(Space(node_->left).norm(a), Space(node_->right).norm(b));
    }
  }
  return 0.0;
}

double Space::dual_norm(const Vector& f) const {
  require_same_dim(std::size_t(node_->dim), f.size(), "dual_norm");
  switch (node_->kind) {
    case SpaceKind::L1:
      return max_abs(f);
    case SpaceKind::LInf: {
      double s = 0.0;
      for (double v : f) s += std::abs(v);
      return s;
    }
    case SpaceKind::LpSmooth: {
      const double q = node_->p / (node_->p - 1.0);
      double s = 0.0;
      for (double v : f) s += std::pow(std::abs(v), q);
      return std::pow(s, 1.0 / q);
    }
    case SpaceKind::Polyhedral: {
      // sup of f over the ball is attained at a vertex
      double m = 0.0;
      for (const auto& u : node_->vertices) m = std::max(m, std::abs(dot(f, u)));
      return m;
    }
    case SpaceKind::Product: {
      const int dl = node_->left->dim;
      Vector a(f.begin(), f.begin() + dl);
      Vector b(f.begin() + dl, f.end());
      return Space(node_->left).dual_norm(a) + Space(node_->right).dual_norm(b);
    }
  }
  return 0.0;
}

SupportSet Space::support_functionals(const Vector& x, const Tolerances& tol) const {
  require_same_dim(std::size_t(node_->dim), x.size(), "support_functionals");
  const double nx = norm(x);
  if (nx <= tol.eps_zero) throw ZeroVectorError("support functionals need a non-zero anchor");

  std::vector<Vector> ext;
  switch (node_->kind) {
    case SpaceKind::LpSmooth: {
      const double pp = node_->p;
      Vector f(x.size());
      for (std::size_t i = 0; i < x.size(); ++i) {
        const double a = std::abs(x[i]);
        f[i] = (x[i] >= 0 ? 1.0 : -1.0) * std::pow(a / nx, pp - 1.0);
        if (a == 0.0) f[i] = 0.0;
      }
      ext.push_back(std::move(f));
      break;
    }
    case SpaceKind::LInf: {
      for (std::size_t i = 0; i < x.size(); ++i) {
        if (nx - std::abs(x[i]) <= tol.eps_eq * nx) {
          Vector f(x.size(), 0.0);
          f[i] = x[i] >= 0 ? 1.0 : -1.0;
          ext.push_back(std::move(f));
        }
      }
      break;
    }
    case SpaceKind::L1: {
      std::vector<std::size_t> zeros;
      Vector base(x.size(), 0.0);
      for (std::size_t i = 0; i < x.size(); ++i) {
        if (std::abs(x[i]) <= tol.eps_zero * nx) {
          zeros.push_back(i);
        } else {
          base[i] = x[i] > 0 ? 1.0 : -1.0;
        }
      }
      if (zeros.size() > 20) {
        throw std::domain_error("l1 support set: more than 20 zero coordinates; enumeration cap exceeded");
      }
      const std::size_t count = std::size_t(1) << zeros.size();
      for (std::size_t mask = 0; mask < count; ++mask) {
        Vector f = base;
        for (std::size_t k = 0; k < zeros.size(); ++k) {
          f[zeros[k]] = (mask >> k) & 1 ? 1.0 : -1.0;
        }
        ext.push_back(std::move(f));
      }
      break;
    }
    case SpaceKind::Polyhedral: {
      for (const auto& f : node_->facets) {
        if (nx - dot(f, x) <= tol.eps_eq * nx) ext.push_back(f);
      }
      break;
    }
    case SpaceKind::Product: {
      const int dl = node_->left->dim;
      Vector a(x.begin(), x.begin() + dl);
      Vector b(x.begin() + dl, x.end());
      const Space L(node_->left), R(node_->right);
      const double na = L.norm(a), nb = R.norm(b);
      const double scale = std::max(na, nb);
      const bool left_active = na >= nb - tol.eps_eq * scale;
      const bool right_active = nb >= na - tol.eps_eq * scale;
      if (left_active) {
        for (auto& f : L.support_functionals(a, tol).extremes) {
          Vector g = std::move(f);
          g.resize(x.size(), 0.0);
          ext.push_back(std::move(g));
        }
      }
      if (right_active) {
        for (auto& f : R.support_functionals(b, tol).extremes) {
          Vector g(std::size_t(dl), 0.0);
          g.insert(g.end(), f.begin(), f.end());
          ext.push_back(std::move(g));
        }
      }
      break;
    }
  }
  sort_dedup(ext, tol.eps_eq);
  return SupportSet{std::move(ext)};
}

Vector Space::support_barycenter(const Vector& x, const Tolerances& tol) const {
  const SupportSet s = support_functionals(x, tol);
  Vector mean(x.size(), 0.0);
  for (const auto& f : s.extremes) {
    for (std::size_t i = 0; i < mean.size(); ++i) mean[i] += f[i];
  }
  const double inv = 1.0 / double(s.extremes.size());
  for (double& v : mean) v *= inv;
  return mean;
}

Decision Space::is_smooth_point(const Vector& x, const Tolerances& tol) const {
  const SupportSet s = support_functionals(x, tol);
  const std::size_t n = s.extremes.size();
  if (n == 1) return Decision::yes(1.0, "unique supporting functional");
  return Decision::no(double(n), "supporting functionals: " + std::to_string(n));
}

std::vector<Vector> Space::extreme_points_ball() const {
  switch (node_->kind) {
    case SpaceKind::L1: {
      std::vector<Vector> out;
      for (int i = 0; i < node_->dim; ++i) {
        Vector e(std::size_t(node_->dim), 0.0);
        e[i] = 1.0;
        out.push_back(e);
        e[i] = -1.0;
        out.push_back(std::move(e));
      }
      sort_dedup(out, 1e-12);
      return out;
    }
    case SpaceKind::LInf: {
      if (node_->dim > 25) throw std::domain_error("linf vertex enumeration cap exceeded");
      std::vector<Vector> out;
      const std::size_t count = std::size_t(1) << node_->dim;
      for (std::size_t mask = 0; mask < count; ++mask) {
        Vector v(std::size_t(node_->dim));
        for (int i = 0; i < node_->dim; ++i) v[i] = (mask >> i) & 1 ? 1.0 : -1.0;
        out.push_back(std::move(v));
      }
      sort_dedup(out, 1e-12);
      return out;
    }
    case SpaceKind::Polyhedral:
      return node_->vertices;
    case SpaceKind::Product: {
      const auto lv = Space(node_->left).extreme_points_ball();
      const auto rv = Space(node_->right).extreme_points_ball();
      std::vector<Vector> out;
      out.reserve(lv.size() * rv.size());
      for (const auto& a : lv) {
        for (const auto& b : rv) out.push_back(concat(a, b));
      }
      return out;
    }
    default:
      throw NotPolyhedralError("extreme points require a polyhedral-kind space");
  }
}

std::vector<Vector> Space::sample_sphere(int count, std::uint64_t seed) const {
  if (count < 1) throw std::invalid_argument("sample count must be >= 1");
  Rng rng(derive_seed(seed, 0x5f3e));
  std::vector<Vector> out;
  out.reserve(std::size_t(count));
  while (int(out.size()) < count) {
    Vector v(std::size_t(node_->dim));
    for (double& c : v) c = rng.normal();
    const double n = norm(v);
    if (n < 1e-12) continue;
    for (double& c : v) c /= n;
    out.push_back(std::move(v));
  }
  return out;
}

std::string Space::describe() const {
  std::ostringstream os;
  switch (node_->kind) {
    case SpaceKind::L1: os << "lp:1:" << node_->dim; break;
    case SpaceKind::LInf: os << "lp:inf:" << node_->dim; break;
    case SpaceKind::LpSmooth: os << "lp:" << node_->p << ":" << node_->dim; break;
    case SpaceKind::Polyhedral:
      os << "polyhedral:" << node_->dim << ":" << node_->facets.size() << "-facets";
      break;
    case SpaceKind::Product:
      os << "product(" << Space(node_->left).describe() << ","
         << Space(node_->right).describe() << ")";
      break;
  }
  return os.str();
}

nlohmann::json Space::to_json() const {
  nlohmann::json j;
  switch (node_->kind) {
    case SpaceKind::L1:
      j["kind"] = "lp";
      j["p"] = 1.0;
      j["dim"] = node_->dim;
      break;
    case SpaceKind::LInf:
      j["kind"] = "lp";
      j["p"] = "inf";
      j["dim"] = node_->dim;
      break;
    case SpaceKind::LpSmooth:
      j["kind"] = "lp";
      j["p"] = node_->p;
      j["dim"] = node_->dim;
      break;
    case SpaceKind::Polyhedral:
      j["kind"] = "polyhedral";
      j["facets"] = node_->facets;
      break;
    case SpaceKind::Product:
      j["kind"] = "product";
      j["left"] = Space(node_->left).to_json();
      j["right"] = Space(node_->right).to_json();
      break;
  }
  return j;
}

Space Space::from_json(const nlohmann::json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "lp") {
    double p;
    if (j.at("p").is_string()) {
      const std::string s = j.at("p").get<std::string>();
      if (s != "inf" && s != "infinity") throw std::invalid_argument("unknown p value: " + s);
      p = kInf;
    } else {
      p = j.at("p").get<double>();
    }
    return lp(p, j.at("dim").get<int>());
  }
  if (kind == "polyhedral") {
    auto facets = j.at("facets").get<std::vector<Vector>>();
    if (facets.empty()) throw std::invalid_argument("polyhedral space needs facets");
    return polyhedral(int(facets.front().size()), std::move(facets));
  }
  if (kind == "product") {
    return product(from_json(j.at("left")), from_json(j.at("right")));
  }
  throw std::invalid_argument("unknown space kind: " + kind);
}

namespace {

Space parse_compact(const std::string& s, std::size_t& pos);

std::string take_token(const std::string& s, std::size_t& pos) {
  std::size_t start = pos;
  while (pos < s.size() && s[pos] != ':' && s[pos] != ',' && s[pos] != ')') ++pos;
  return s.substr(start, pos - start);
}

Space parse_compact(const std::string& s, std::size_t& pos) {
  if (s.compare(pos, 8, "product(") == 0) {
    pos += 8;
    Space left = parse_compact(s, pos);
    if (pos >= s.size() || s[pos] != ',') throw std::invalid_argument("expected ',' in product(...)");
    ++pos;
    Space right = parse_compact(s, pos);
    if (pos >= s.size() || s[pos] != ')') throw std::invalid_argument("expected ')' in product(...)");
    ++pos;
    return Space::product(left, right);
  }
  if (s.compare(pos, 3, "lp:") == 0) {
    pos += 3;
    const std::string ptok = take_token(s, pos);
    if (pos >= s.size() || s[pos] != ':') throw std::invalid_argument("expected lp:<p>:<dim>");
    ++pos;
    const std::string dtok = take_token(s, pos);
    const double p = (ptok == "inf") ? kInf : std::stod(ptok);
    return Space::lp(p, std::stoi(dtok));
  }
  throw std::invalid_argument("cannot parse space descriptor at: " + s.substr(pos));
}

}  // namespace

Space Space::parse(const std::string& text) {
  std::size_t first = text.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) throw std::invalid_argument("empty space descriptor");
  std::size_t last = text.find_last_not_of(" \t\r\n");
  const std::string s = text.substr(first, last - first + 1);
  if (s.front() == '{') return from_json(nlohmann::json::parse(s));
  std::size_t pos = 0;
  Space sp = parse_compact(s, pos);
  if (pos != s.size()) throw std::invalid_argument("trailing characters in space descriptor: " + s.substr(pos));
  return sp;
}

}  // namespace bjgeo
