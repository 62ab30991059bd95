#include "qlskit/weyl.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>

#include "qlskit/errors.hpp"

namespace qlskit {

namespace {

constexpr int kMaxGroupSize = 1000000;

std::vector<Int> mat_mul(const std::vector<Int>& A, const std::vector<Int>& B, int n) {
  std::vector<Int> C(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      Int a = A[static_cast<std::size_t>(i * n + k)];
      if (a == 0) continue;
      for (int j = 0; j < n; ++j)
        C[static_cast<std::size_t>(i * n + j)] += a * B[static_cast<std::size_t>(k * n + j)];
    }
  return C;
}

std::vector<Int> identity_mat(int n) {
  std::vector<Int> M(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0);
  for (int i = 0; i < n; ++i) M[static_cast<std::size_t>(i * n + i)] = 1;
  return M;
}

}  // namespace

WeylGroup::WeylGroup(const RootDatum& datum) : datum_(datum), rank_(datum.rank) {
  int n = rank_;
  mat_stride_ = static_cast<std::size_t>(n) * static_cast<std::size_t>(n);

  std::vector<std::vector<Int>> sroot(static_cast<std::size_t>(n)), scoroot(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    sroot[static_cast<std::size_t>(i)] = identity_mat(n);
    scoroot[static_cast<std::size_t>(i)] = identity_mat(n);
    for (int j = 0; j < n; ++j) {
      // s_i(alpha_j) = alpha_j - <alpha_j, alpha_i^vee> alpha_i
      sroot[static_cast<std::size_t>(i)][static_cast<std::size_t>(i * n + j)] -=
          datum_.cartan[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      // s_i(alpha_j^vee) = alpha_j^vee - <alpha_i, alpha_j^vee> alpha_i^vee
      scoroot[static_cast<std::size_t>(i)][static_cast<std::size_t>(i * n + j)] -=
          datum_.cartan[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
    }
  }

  std::map<std::vector<Int>, int> idx_map;
  std::vector<std::vector<Int>> rmats, cmats;
  std::vector<int> plen;
  std::vector<std::vector<int>> prmul;

  rmats.push_back(identity_mat(n));
  cmats.push_back(identity_mat(n));
  plen.push_back(0);
  prmul.emplace_back(static_cast<std::size_t>(n), -1);
  idx_map[rmats[0]] = 0;

  std::deque<int> queue{0};
  while (!queue.empty()) {
    int x = queue.front();
    queue.pop_front();
    for (int i = 0; i < n; ++i) {
      std::vector<Int> R = mat_mul(rmats[static_cast<std::size_t>(x)], sroot[static_cast<std::size_t>(i)], n);
      auto it = idx_map.find(R);
      int y;
      if (it == idx_map.end()) {
        y = static_cast<int>(rmats.size());
        if (y >= kMaxGroupSize)
          throw EnumerationCapExceeded("Weyl group exceeds the element cap");
        idx_map.emplace(R, y);
        rmats.push_back(std::move(R));
        cmats.push_back(mat_mul(cmats[static_cast<std::size_t>(x)], scoroot[static_cast<std::size_t>(i)], n));
        plen.push_back(plen[static_cast<std::size_t>(x)] + 1);
        prmul.emplace_back(static_cast<std::size_t>(n), -1);
        queue.push_back(y);
      } else {
        y = it->second;
      }
      prmul[static_cast<std::size_t>(x)][static_cast<std::size_t>(i)] = y;
    }
  }

  int N = static_cast<int>(rmats.size());

  std::vector<std::vector<int>> plmul(static_cast<std::size_t>(N), std::vector<int>(static_cast<std::size_t>(n), -1));
  for (int x = 0; x < N; ++x)
    for (int i = 0; i < n; ++i) {
      std::vector<Int> R = mat_mul(sroot[static_cast<std::size_t>(i)], rmats[static_cast<std::size_t>(x)], n);
      auto it = idx_map.find(R);
      require(it != idx_map.end(), "left multiplication left the group");
      plmul[static_cast<std::size_t>(x)][static_cast<std::size_t>(i)] = it->second;
    }

  // Shortlex words, built along increasing length: the first letter is the
  // smallest left descent, then recurse on the shortened element.
  std::vector<int> by_len(static_cast<std::size_t>(N));
  for (int x = 0; x < N; ++x) by_len[static_cast<std::size_t>(x)] = x;
  std::stable_sort(by_len.begin(), by_len.end(), [&](int a, int b) {
    return plen[static_cast<std::size_t>(a)] < plen[static_cast<std::size_t>(b)];
  });
  std::vector<std::vector<int>> pword(static_cast<std::size_t>(N));
  for (int x : by_len) {
    if (plen[static_cast<std::size_t>(x)] == 0) continue;
    int j = -1;
    for (int i = 0; i < n; ++i)
      if (plen[static_cast<std::size_t>(plmul[static_cast<std::size_t>(x)][static_cast<std::size_t>(i)])] <
          plen[static_cast<std::size_t>(x)]) {
        j = i;
        break;
      }
    require(j >= 0, "non-identity element with no left descent");
    int rest = plmul[static_cast<std::size_t>(x)][static_cast<std::size_t>(j)];
    pword[static_cast<std::size_t>(x)].push_back(j);
    const auto& tail = pword[static_cast<std::size_t>(rest)];
    pword[static_cast<std::size_t>(x)].insert(pword[static_cast<std::size_t>(x)].end(), tail.begin(), tail.end());
  }

  std::vector<int> order(static_cast<std::size_t>(N));
  for (int x = 0; x < N; ++x) order[static_cast<std::size_t>(x)] = x;
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (plen[static_cast<std::size_t>(a)] != plen[static_cast<std::size_t>(b)])
      return plen[static_cast<std::size_t>(a)] < plen[static_cast<std::size_t>(b)];
    return pword[static_cast<std::size_t>(a)] < pword[static_cast<std::size_t>(b)];
  });
  std::vector<int> old2new(static_cast<std::size_t>(N));
  for (int k = 0; k < N; ++k) old2new[static_cast<std::size_t>(order[static_cast<std::size_t>(k)])] = k;

  n_ = N;
  root_mats_.resize(static_cast<std::size_t>(N) * mat_stride_);
  coroot_mats_.resize(static_cast<std::size_t>(N) * mat_stride_);
  lengths_.resize(static_cast<std::size_t>(N));
  words_.resize(static_cast<std::size_t>(N));
  rmul_.resize(static_cast<std::size_t>(N) * static_cast<std::size_t>(n));
  lmul_.resize(static_cast<std::size_t>(N) * static_cast<std::size_t>(n));
  inv_.resize(static_cast<std::size_t>(N));

  for (int k = 0; k < N; ++k) {
    int o = order[static_cast<std::size_t>(k)];
    std::copy(rmats[static_cast<std::size_t>(o)].begin(), rmats[static_cast<std::size_t>(o)].end(),
              root_mats_.begin() + static_cast<std::ptrdiff_t>(static_cast<std::size_t>(k) * mat_stride_));
    std::copy(cmats[static_cast<std::size_t>(o)].begin(), cmats[static_cast<std::size_t>(o)].end(),
              coroot_mats_.begin() + static_cast<std::ptrdiff_t>(static_cast<std::size_t>(k) * mat_stride_));
    lengths_[static_cast<std::size_t>(k)] = plen[static_cast<std::size_t>(o)];
    words_[static_cast<std::size_t>(k)] = pword[static_cast<std::size_t>(o)];
    for (int i = 0; i < n; ++i) {
      rmul_[static_cast<std::size_t>(k) * static_cast<std::size_t>(n) + static_cast<std::size_t>(i)] =
          old2new[static_cast<std::size_t>(prmul[static_cast<std::size_t>(o)][static_cast<std::size_t>(i)])];
      lmul_[static_cast<std::size_t>(k) * static_cast<std::size_t>(n) + static_cast<std::size_t>(i)] =
          old2new[static_cast<std::size_t>(plmul[static_cast<std::size_t>(o)][static_cast<std::size_t>(i)])];
    }
    index_of_[rmats[static_cast<std::size_t>(o)]] = k;
  }

  for (int k = 0; k < N; ++k) {
    int idx = 0;
    const auto& w = words_[static_cast<std::size_t>(k)];
    for (auto it = w.rbegin(); it != w.rend(); ++it) idx = rmul(idx, *it);
    inv_[static_cast<std::size_t>(k)] = idx;
    require(lengths_[static_cast<std::size_t>(idx)] == lengths_[static_cast<std::size_t>(k)],
            "inverse length mismatch");
  }
  for (int k = 0; k < N; ++k)
    require(inv_[static_cast<std::size_t>(inv_[static_cast<std::size_t>(k)])] == k, "inversion is not involutive");
  require(N == 1 || lengths_[static_cast<std::size_t>(N - 1)] > lengths_[static_cast<std::size_t>(N - 2)],
          "longest element is not unique");
}

int WeylGroup::lookup(const std::vector<Int>& root_mat) const {
  auto it = index_of_.find(root_mat);
  return it == index_of_.end() ? -1 : it->second;
}

WeylElt WeylGroup::simple(int i) const {
  check_arg(i >= 0 && i < rank_, "simple reflection index out of range");
  return at(rmul(0, i));
}

WeylElt WeylGroup::at(int idx) const {
  check_arg(idx >= 0 && idx < n_, "element index out of range");
  return WeylElt{this, idx};
}

WeylElt WeylGroup::from_word(const std::vector<int>& word) const {
  int idx = 0;
  for (int i : word) {
    check_arg(i >= 0 && i < rank_, "word letter out of range");
    idx = rmul(idx, i);
  }
  return WeylElt{this, idx};
}

WeylElt WeylGroup::reflection(const RootVec& beta) const {
  CorootVec xi = datum_.dual_root(beta);
  std::vector<Int> M = identity_mat(rank_);
  for (int j = 0; j < rank_; ++j) {
    Int c = datum_.pair(RootVec::unit(rank_, j), xi);
    if (c == 0) continue;
    for (int k = 0; k < rank_; ++k) M[static_cast<std::size_t>(k * rank_ + j)] -= c * beta[k];
  }
  int idx = lookup(M);
  require(idx >= 0, "reflection matrix is not a group element; input is not a root");
  return at(idx);
}

WeylElt WeylGroup::parse(const std::string& text) const {
  std::size_t k = 0;
  auto skip = [&] {
    while (k < text.size() && (text[k] == ' ' || text[k] == '*' || text[k] == ',')) ++k;
  };
  skip();
  check_arg(k < text.size(), "empty group element");
  if (text[k] == 'e' || text[k] == 'E') {
    ++k;
    skip();
    check_arg(k == text.size(), "trailing characters after identity");
    return identity();
  }
  std::vector<int> letters;
  while (true) {
    skip();
    if (k == text.size()) break;
    check_arg(text[k] == 's' || text[k] == 'S', "expected s<index> token");
    ++k;
    check_arg(k < text.size() && std::isdigit(static_cast<unsigned char>(text[k])), "expected digit after s");
    int v = 0;
    while (k < text.size() && std::isdigit(static_cast<unsigned char>(text[k]))) {
      v = v * 10 + (text[k] - '0');
      ++k;
    }
    check_arg(v >= 1 && v <= rank_, "simple reflection index out of range");
    letters.push_back(v - 1);
  }
  check_arg(!letters.empty(), "empty group element");
  return from_word(letters);
}

std::vector<WeylElt> WeylGroup::elements() const {
  std::vector<WeylElt> out;
  out.reserve(static_cast<std::size_t>(n_));
  for (int k = 0; k < n_; ++k) out.push_back(WeylElt{this, k});
  return out;
}

std::vector<WeylElt> WeylGroup::parabolic_elements(const std::vector<int>& J) const {
  std::vector<WeylElt> out;
  for (int k = 0; k < n_; ++k) {
    bool ok = true;
    for (int i : word(k))
      if (!contains(J, i)) {
        ok = false;
        break;
      }
    if (ok) out.push_back(WeylElt{this, k});
  }
  return out;
}

int WeylGroup::product(int a, int b) const {
  int idx = a;
  for (int i : word(b)) idx = rmul(idx, i);
  return idx;
}

int WeylElt::length() const { return group->length(idx); }

const std::vector<int>& WeylElt::word() const { return group->word(idx); }

WeylElt WeylElt::inv() const { return WeylElt{group, group->inverse(idx)}; }

RootVec WeylElt::act(const RootVec& beta) const {
  int n = group->rank();
  const Int* M = group->root_mat(idx);
  RootVec r = RootVec::zero(n);
  for (int i = 0; i < n; ++i) {
    Int s = 0;
    for (int j = 0; j < n; ++j) s += M[i * n + j] * beta[j];
    r[i] = s;
  }
  return r;
}

CorootVec WeylElt::act(const CorootVec& xi) const {
  int n = group->rank();
  const Int* M = group->coroot_mat(idx);
  CorootVec r = CorootVec::zero(n);
  for (int i = 0; i < n; ++i) {
    Int s = 0;
    for (int j = 0; j < n; ++j) s += M[i * n + j] * xi[j];
    r[i] = s;
  }
  return r;
}

WeightVec WeylElt::act(const WeightVec& mu) const {
  // <w mu, alpha_i^vee> = <mu, w^{-1} alpha_i^vee>
  int n = group->rank();
  const Int* C = group->coroot_mat(group->inverse(idx));
  WeightVec r = WeightVec::zero(n);
  for (int i = 0; i < n; ++i) {
    Int s = 0;
    for (int k = 0; k < n; ++k) s += C[k * n + i] * mu[k];
    r[i] = s;
  }
  return r;
}

std::vector<Rat> WeylElt::act(const std::vector<Rat>& mu) const {
  int n = group->rank();
  const Int* C = group->coroot_mat(group->inverse(idx));
  std::vector<Rat> r(static_cast<std::size_t>(n), Rat(0));
  for (int i = 0; i < n; ++i) {
    Rat s(0);
    for (int k = 0; k < n; ++k) s += Rat(C[k * n + i]) * mu[static_cast<std::size_t>(k)];
    r[static_cast<std::size_t>(i)] = s;
  }
  return r;
}

std::string WeylElt::str() const {
  if (idx == 0) return "e";
  std::string s;
  for (int i : word()) s += "s" + std::to_string(i + 1);
  return s;
}

WeylElt operator*(const WeylElt& a, const WeylElt& b) {
  require(a.group == b.group, "elements of different groups");
  return WeylElt{a.group, a.group->product(a.idx, b.idx)};
}

bool root_is_positive(const RootVec& beta) {
  bool nonzero = false;
  for (Int x : beta.c) {
    if (x < 0) return false;
    if (x > 0) nonzero = true;
  }
  return nonzero;
}

WeylElt min_coset_rep(const WeylElt& w, const std::vector<int>& J) {
  WeylElt v = w;
  bool moved = true;
  while (moved) {
    moved = false;
    for (int i : J) {
      int y = v.group->rmul(v.idx, i);
      if (v.group->length(y) < v.length()) {
        v = WeylElt{v.group, y};
        moved = true;
      }
    }
  }
  return v;
}

bool in_parabolic(const WeylElt& w, const std::vector<int>& J) {
  for (int i : w.word())
    if (!contains(J, i)) return false;
  return true;
}

// ---- Affine layer -------------------------------------------------------

std::string AffRoot::str(const RootDatum& datum) const {
  std::string s = datum.root_str(alpha);
  if (n == 1)
    s += "+d";
  else if (n == -1)
    s += "-d";
  else if (n > 0)
    s += "+" + std::to_string(n) + "d";
  else if (n < 0)
    s += std::to_string(n) + "d";
  return s;
}

std::string AffWeylElt::str() const {
  if (xi.is_zero()) return w.str();
  std::string t = "t" + coords_str(xi);
  return w.is_identity() ? t : w.str() + "*" + t;
}

AffWeylElt aff_identity(const WeylGroup& W) {
  return AffWeylElt{W.identity(), CorootVec::zero(W.rank())};
}

AffWeylElt aff_translation(const WeylGroup& W, const CorootVec& xi) {
  return AffWeylElt{W.identity(), xi};
}

AffWeylElt operator*(const AffWeylElt& a, const AffWeylElt& b) {
  return AffWeylElt{a.w * b.w, b.w.inv().act(a.xi) + b.xi};
}

AffWeylElt aff_inverse(const AffWeylElt& x) {
  return AffWeylElt{x.w.inv(), -(x.w.act(x.xi))};
}

AffineWeight aff_act(const AffWeylElt& x, const AffineWeight& mu) {
  AffineWeight r;
  r.finite = x.w.act(mu.finite);
  r.delta = mu.delta - RootDatum::pair(mu.finite, x.xi);
  return r;
}

AffRoot aff_act(const AffWeylElt& x, const AffRoot& beta) {
  const RootDatum& datum = x.w.group->datum();
  return AffRoot{x.w.act(beta.alpha), beta.n - datum.pair(beta.alpha, x.xi)};
}

Int semi_infinite_length(const AffWeylElt& x) {
  Int s = x.w.length();
  for (Int v : x.xi.c) s += 2 * v;
  return s;
}

AffRoot affine_simple_root(const RootDatum& datum, int a) {
  check_arg(a >= 0 && a <= datum.rank, "affine index out of range");
  if (a == 0) return AffRoot{-datum.theta, 1};
  return AffRoot{RootVec::unit(datum.rank, a - 1), 0};
}

AffWeylElt affine_simple_reflection(const WeylGroup& W, int a) {
  check_arg(a >= 0 && a <= W.rank(), "affine index out of range");
  if (a == 0) return AffWeylElt{W.reflection(W.datum().theta), -W.datum().theta_dual};
  return AffWeylElt{W.simple(a - 1), CorootVec::zero(W.rank())};
}

WeylElt classical_affine_reflection(const WeylGroup& W, int a) {
  check_arg(a >= 0 && a <= W.rank(), "affine index out of range");
  return a == 0 ? W.reflection(W.datum().theta) : W.simple(a - 1);
}

bool affine_left_descent(const AffWeylElt& x, int a) {
  // Descent iff x^{-1}(alpha_a) is a negative affine root.
  const RootDatum& datum = x.w.group->datum();
  CorootVec wxi = x.w.act(x.xi);
  if (a == 0) {
    Int k0 = 1 - datum.pair(datum.theta, wxi);
    if (k0 < 0) return true;
    if (k0 > 0) return false;
    return root_is_positive(x.w.inv().act(datum.theta));
  }
  RootVec alpha = RootVec::unit(datum.rank, a - 1);
  Int k = datum.pair(alpha, wxi);
  if (k < 0) return true;
  if (k > 0) return false;
  return !root_is_positive(x.w.inv().act(alpha));
}

std::vector<int> affine_word(const AffWeylElt& x) {
  require(x.w.group != nullptr, "element has no group");
  const WeylGroup& W = *x.w.group;
  std::vector<int> out;
  AffWeylElt y = x;
  while (!(y.w.is_identity() && y.xi.is_zero())) {
    int found = -1;
    for (int a = 0; a <= W.rank(); ++a)
      if (affine_left_descent(y, a)) {
        found = a;
        break;
      }
    require(found >= 0, "non-identity affine element with no left descent");
    out.push_back(found);
    y = affine_simple_reflection(W, found) * y;
  }
  return out;
}

bool is_semi_infinite_coset_rep(const AffWeylElt& x, const std::vector<int>& J) {
  const RootDatum& datum = x.w.group->datum();
  for (int k : datum.positive_roots_of(J)) {
    const RootVec& alpha = datum.pos_roots[static_cast<std::size_t>(k)];
    Int p = datum.pair(alpha, x.xi);
    if (p == 0) {
      if (!root_is_positive(x.w.act(alpha))) return false;
    } else if (p == -1) {
      if (root_is_positive(x.w.act(alpha))) return false;
    } else {
      return false;
    }
  }
  return true;
}

AffWeylElt project_translation(const WeylGroup& W, const CorootVec& xi, const std::vector<int>& J) {
  CorootVec base = xi;
  for (int i : J) base[i] = 0;

  AffWeylElt direct{W.identity(), base};
  if (is_semi_infinite_coset_rep(direct, J)) return direct;

  const RootDatum& datum = W.datum();
  std::vector<int> posJ = datum.positive_roots_of(J);
  Int spread = 0;
  for (int k : posJ) spread = std::max(spread, std::llabs(datum.pair(datum.pos_roots[static_cast<std::size_t>(k)], base)));
  Int B0 = std::max<Int>(2, 1 + spread);

  std::vector<int> Js = J;
  std::sort(Js.begin(), Js.end());
  std::vector<WeylElt> WJ = W.parabolic_elements(J);

  for (Int B : {B0, 2 * B0, 4 * B0, 8 * B0}) {
    Int prev = B == B0 ? -1 : B / 2;
    std::vector<Int> vals(Js.size(), -B);
    bool done = Js.empty();
    while (!done) {
      bool inside_prev = prev >= 0;
      if (inside_prev)
        for (Int v : vals)
          if (std::llabs(v) > prev) {
            inside_prev = false;
            break;
          }
      if (!inside_prev) {
        CorootVec zeta = CorootVec::zero(W.rank());
        for (std::size_t t = 0; t < Js.size(); ++t) zeta[Js[t]] = vals[t];
        for (const WeylElt& u : WJ) {
          AffWeylElt cand{u.inv(), u.act(base - zeta)};
          if (is_semi_infinite_coset_rep(cand, J)) {
            AffWeylElt back = cand * AffWeylElt{u, zeta};
            require(back.w.is_identity() && back.xi == base, "projection factorization failed");
            return cand;
          }
        }
      }
      // odometer, last coordinate fastest
      std::size_t t = Js.size();
      while (t > 0) {
        --t;
        if (vals[t] < B) {
          ++vals[t];
          for (std::size_t r = t + 1; r < Js.size(); ++r) vals[r] = -B;
          break;
        }
        if (t == 0) done = true;
      }
    }
  }
  throw SearchExhausted("translation projection: no factorization in search box");
}

AffWeylElt semi_infinite_projection(const WeylGroup& W, const AffWeylElt& x, const std::vector<int>& J) {
  WeylElt v = min_coset_rep(x.w, J);
  WeylElt u = v.inv() * x.w;
  require(in_parabolic(u, J), "coset factor escaped the parabolic subgroup");
  AffWeylElt p = project_translation(W, u.act(x.xi), J);
  AffWeylElt r{v * p.w, p.xi};
  require(is_semi_infinite_coset_rep(r, J), "projection left the representative set");
  return r;
}

}  // namespace qlskit
