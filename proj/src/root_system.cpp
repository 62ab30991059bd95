#include "qlskit/root_system.hpp"

#include <algorithm>
#include <deque>
#include <set>

#include "qlskit/errors.hpp"

namespace qlskit {

AffineWeight::AffineWeight(const WeightVec& w) : delta(0) {
  finite.reserve(w.c.size());
  for (Int x : w.c) finite.emplace_back(x);
}

WeightVec AffineWeight::classical() const {
  WeightVec w = WeightVec::zero(rank());
  for (int i = 0; i < rank(); ++i) w[i] = as_integer(finite[static_cast<std::size_t>(i)]);
  return w;
}

Int AffineWeight::delta_int() const { return as_integer(delta); }

std::string AffineWeight::str() const {
  std::string s = "(" + join(finite, ",", [](const Rat& r) { return qlskit::str(r); }) + ")";
  if (delta != Rat(0)) s += "+" + qlskit::str(delta) + "d";
  return s;
}

AffineWeight operator+(const AffineWeight& a, const AffineWeight& b) {
  AffineWeight r = a;
  for (std::size_t i = 0; i < r.finite.size(); ++i) r.finite[i] += b.finite[i];
  r.delta += b.delta;
  return r;
}

AffineWeight operator-(const AffineWeight& a, const AffineWeight& b) {
  AffineWeight r = a;
  for (std::size_t i = 0; i < r.finite.size(); ++i) r.finite[i] -= b.finite[i];
  r.delta -= b.delta;
  return r;
}

AffineWeight operator*(const Rat& k, const AffineWeight& a) {
  AffineWeight r = a;
  for (auto& x : r.finite) x *= k;
  r.delta *= k;
  return r;
}

namespace {

void validate_rank(char letter, int rank) {
  bool ok = false;
  switch (letter) {
    case 'A': ok = rank >= 1; break;
    case 'B': ok = rank >= 2; break;
    case 'C': ok = rank >= 2; break;
    case 'D': ok = rank >= 4; break;
    case 'E': ok = rank >= 6 && rank <= 8; break;
    case 'F': ok = rank == 4; break;
    case 'G': ok = rank == 2; break;
    default: break;
  }
  check_arg(ok, std::string("unsupported type ") + letter + std::to_string(rank));
}

// Unordered bonds of the Dynkin diagram; entries off the chain pattern are
// handled per type below.
std::vector<std::pair<int, int>> diagram_edges(char letter, int rank) {
  std::vector<std::pair<int, int>> edges;
  if (letter == 'D') {
    for (int i = 0; i + 2 < rank; ++i) edges.emplace_back(i, i + 1);
    edges.emplace_back(rank - 3, rank - 1);
  } else if (letter == 'E') {
    edges.emplace_back(0, 2);
    for (int i = 2; i + 1 < rank; ++i) edges.emplace_back(i, i + 1);
    edges.emplace_back(1, 3);
  } else {
    for (int i = 0; i + 1 < rank; ++i) edges.emplace_back(i, i + 1);
  }
  return edges;
}

}  // namespace

RootDatum RootDatum::build(char letter, int rank) {
  validate_rank(letter, rank);
  RootDatum d;
  d.letter = letter;
  d.rank = rank;
  d.cartan.assign(static_cast<std::size_t>(rank), std::vector<Int>(static_cast<std::size_t>(rank), 0));
  for (int i = 0; i < rank; ++i) d.cartan[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 2;
  for (auto [i, j] : diagram_edges(letter, rank)) {
    d.cartan[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = -1;
    d.cartan[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = -1;
  }
  d.symmetrizer.assign(static_cast<std::size_t>(rank), 1);
  switch (letter) {
    case 'B':
      // short last node
      for (int i = 0; i + 1 < rank; ++i) d.symmetrizer[static_cast<std::size_t>(i)] = 2;
      d.cartan[static_cast<std::size_t>(rank - 1)][static_cast<std::size_t>(rank - 2)] = -2;
      break;
    case 'C':
      // long last node
      d.symmetrizer[static_cast<std::size_t>(rank - 1)] = 2;
      d.cartan[static_cast<std::size_t>(rank - 2)][static_cast<std::size_t>(rank - 1)] = -2;
      break;
    case 'F':
      d.symmetrizer = {2, 2, 1, 1};
      d.cartan[2][1] = -2;
      break;
    case 'G':
      d.symmetrizer = {1, 3};
      d.cartan[0][1] = -3;
      break;
    default:
      break;
  }
  d.finish_build();
  return d;
}

RootDatum RootDatum::build(const std::string& type_label) {
  check_arg(type_label.size() >= 2, "type label must look like A2, B3, ...");
  char letter = type_label[0];
  if (letter >= 'a' && letter <= 'g') letter = static_cast<char>(letter - 'a' + 'A');
  int rank = 0;
  for (std::size_t k = 1; k < type_label.size(); ++k) {
    char ch = type_label[k];
    check_arg(ch >= '0' && ch <= '9', "type label must look like A2, B3, ...");
    rank = rank * 10 + (ch - '0');
  }
  return build(letter, rank);
}

void RootDatum::finish_build() {
  for (int i = 0; i < rank; ++i)
    for (int j = 0; j < rank; ++j)
      require(symmetrizer[static_cast<std::size_t>(i)] * cartan[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] ==
                  symmetrizer[static_cast<std::size_t>(j)] * cartan[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)],
              "symmetrizer does not symmetrize the Cartan matrix");

  // Positive roots: closure of the simple roots under simple reflections,
  // keeping vectors with nonnegative coordinates.
  std::set<RootVec> seen;
  std::deque<RootVec> queue;
  for (int i = 0; i < rank; ++i) {
    RootVec a = RootVec::unit(rank, i);
    seen.insert(a);
    queue.push_back(a);
  }
  while (!queue.empty()) {
    RootVec beta = queue.front();
    queue.pop_front();
    for (int i = 0; i < rank; ++i) {
      Int k = 0;
      for (int j = 0; j < rank; ++j)
        k += cartan[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] * beta[j];
      RootVec gamma = beta;
      gamma[i] -= k;
      bool positive = true;
      for (Int x : gamma.c)
        if (x < 0) { positive = false; break; }
      if (positive && seen.insert(gamma).second) queue.push_back(gamma);
    }
  }
  pos_roots.assign(seen.begin(), seen.end());
  std::sort(pos_roots.begin(), pos_roots.end(), [](const RootVec& a, const RootVec& b) {
    Int ha = height(a), hb = height(b);
    if (ha != hb) return ha < hb;
    return a < b;
  });
  for (int k = 0; k < num_pos_roots(); ++k) pos_index_[pos_roots[static_cast<std::size_t>(k)]] = k;

  theta = pos_roots.back();
  require(num_pos_roots() < 2 ||
              height(theta) > height(pos_roots[static_cast<std::size_t>(num_pos_roots() - 2)]),
          "highest root is not unique at its height");
  WeightVec theta_w = root_as_weight(theta);
  for (Int x : theta_w.c) require(x >= 0, "highest root is not dominant");

  pos_coroots.reserve(pos_roots.size());
  for (const RootVec& beta : pos_roots) pos_coroots.push_back(dual_root(beta));
  theta_dual = pos_coroots.back();
}

std::string RootDatum::type_label() const { return letter + std::to_string(rank); }

Int RootDatum::pair(const RootVec& beta, const CorootVec& xi) const {
  Int s = 0;
  for (int i = 0; i < rank; ++i) {
    if (beta[i] == 0) continue;
    for (int j = 0; j < rank; ++j)
      s += beta[i] * xi[j] * cartan[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
  }
  return s;
}

Int RootDatum::pair(const WeightVec& mu, const CorootVec& xi) {
  Int s = 0;
  for (std::size_t i = 0; i < mu.c.size(); ++i) s += mu.c[i] * xi.c[i];
  return s;
}

Rat RootDatum::pair(const std::vector<Rat>& mu, const CorootVec& xi) {
  Rat s(0);
  for (std::size_t i = 0; i < mu.size(); ++i) s += mu[i] * Rat(xi.c[i]);
  return s;
}

Int RootDatum::height(const RootVec& beta) {
  Int h = 0;
  for (Int x : beta.c) h += x;
  return h;
}

CorootVec RootDatum::dual_root(const RootVec& beta) const {
  check_arg(beta.rank() == rank, "coordinate vector of the wrong rank");
  Int norm = 0;  // (beta, beta)
  for (int i = 0; i < rank; ++i) {
    if (beta[i] == 0) continue;
    for (int j = 0; j < rank; ++j)
      norm += beta[i] * beta[j] * symmetrizer[static_cast<std::size_t>(i)] *
              cartan[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  }
  require(norm > 0 && norm % 2 == 0, "root norm must be a positive even integer");
  Int d_beta = norm / 2;
  CorootVec xi = CorootVec::zero(rank);
  for (int i = 0; i < rank; ++i) {
    Int num = beta[i] * symmetrizer[static_cast<std::size_t>(i)];
    require(num % d_beta == 0, "dual root has non-integer coordinates");
    xi[i] = num / d_beta;
  }
  return xi;
}

WeightVec RootDatum::root_as_weight(const RootVec& beta) const {
  WeightVec w = WeightVec::zero(rank);
  for (int i = 0; i < rank; ++i) {
    Int s = 0;
    for (int j = 0; j < rank; ++j)
      s += cartan[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] * beta[j];
    w[i] = s;
  }
  return w;
}

int RootDatum::pos_root_index(const RootVec& beta) const {
  auto it = pos_index_.find(beta);
  return it == pos_index_.end() ? -1 : it->second;
}

bool RootDatum::root_in_span(const RootVec& beta, const std::vector<int>& J) const {
  for (int i = 0; i < rank; ++i)
    if (beta[i] != 0 && !contains(J, i)) return false;
  return true;
}

std::vector<int> RootDatum::positive_roots_of(const std::vector<int>& J) const {
  std::vector<int> out;
  for (int k = 0; k < num_pos_roots(); ++k)
    if (root_in_span(pos_roots[static_cast<std::size_t>(k)], J)) out.push_back(k);
  return out;
}

std::vector<Rat> RootDatum::rho_of(const std::vector<int>& J) const {
  std::vector<Rat> rho(static_cast<std::size_t>(rank), Rat(0));
  for (int k : positive_roots_of(J)) {
    WeightVec w = root_as_weight(pos_roots[static_cast<std::size_t>(k)]);
    for (int i = 0; i < rank; ++i) rho[static_cast<std::size_t>(i)] += Rat(w[i], 2);
  }
  return rho;
}

Int RootDatum::two_rho_rhoJ_pair(const std::vector<int>& J, const CorootVec& xi) const {
  Int s = 0;
  for (Int x : xi.c) s += 2 * x;
  for (int k : positive_roots_of(J)) s -= pair(pos_roots[static_cast<std::size_t>(k)], xi);
  return s;
}

namespace {

std::string symbol_sum(const std::vector<Int>& coef, const std::string& sym, const std::string& suffix) {
  std::string out;
  for (std::size_t i = 0; i < coef.size(); ++i) {
    Int c = coef[i];
    if (c == 0) continue;
    if (c > 0 && !out.empty()) out += "+";
    if (c == -1)
      out += "-";
    else if (c != 1)
      out += std::to_string(c);
    out += sym + std::to_string(i + 1) + suffix;
  }
  return out.empty() ? "0" : out;
}

}  // namespace

std::string RootDatum::root_str(const RootVec& beta) const { return symbol_sum(beta.c, "a", ""); }

std::string RootDatum::coroot_str(const CorootVec& xi) const { return symbol_sum(xi.c, "a", "v"); }

std::vector<int> derive_J(const WeightVec& lambda) {
  std::vector<int> J;
  for (int i = 0; i < lambda.rank(); ++i) {
    check_arg(lambda[i] >= 0, "weight must be dominant");
    if (lambda[i] == 0) J.push_back(i);
  }
  return J;
}

bool contains(const std::vector<int>& J, int i) {
  for (int j : J)
    if (j == i) return true;
  return false;
}

std::string index_set_str(const std::vector<int>& J) {
  std::vector<int> s = J;
  std::sort(s.begin(), s.end());
  return "{" + join(s, ",", [](int i) { return std::to_string(i + 1); }) + "}";
}

}  // namespace qlskit
