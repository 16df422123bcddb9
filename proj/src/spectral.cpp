#include "pseudoherm/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <sstream>

#include "pseudoherm/error.hpp"
#include "pseudoherm/linalg.hpp"

namespace pseudoherm {

std::size_t JordanBlockSpec::algebraic_multiplicity() const {
  return std::accumulate(block_dims.begin(), block_dims.end(), std::size_t{0});
}

std::string_view to_string(GroupKind kind) {
  switch (kind) {
    case GroupKind::Real: return "real";
    case GroupKind::PlusMember: return "pair+";
    case GroupKind::MinusMember: return "pair-";
    case GroupKind::Unpaired: return "unpaired";
  }
  return "unknown";
}

std::size_t SpectralDecomposition::block_count() const {
  std::size_t c = 0;
  for (const auto& g : groups) c += g.spec.block_dims.size();
  return c;
}

std::size_t SpectralDecomposition::offset(std::size_t g, std::size_t a) const {
  const auto& grp = groups.at(g);
  std::size_t off = grp.offset;
  for (std::size_t b = 0; b < a; ++b) off += grp.spec.block_dims.at(b);
  return off;
}

std::size_t SpectralDecomposition::partner(std::size_t g) const {
  const auto& grp = groups.at(g);
  if (grp.kind != GroupKind::PlusMember && grp.kind != GroupKind::MinusMember) return std::string::npos;
  for (std::size_t h = 0; h < groups.size(); ++h)
    if (h != g && groups[h].pair_id == grp.pair_id) return h;
  fail(ErrorCode::NotPaired, "pair member without partner");
}

CMatrix SpectralDecomposition::jordan_matrix() const {
  CMatrix j(n);
  for (const auto& g : groups) {
    std::size_t off = g.offset;
    for (std::size_t p : g.spec.block_dims) {
      for (std::size_t i = 0; i < p; ++i) {
        j(off + i, off + i) = g.spec.eigenvalue;
        if (i + 1 < p) j(off + i, off + i + 1) = 1.0;
      }
      off += p;
    }
  }
  return j;
}

CMatrix SpectralDecomposition::reconstruct() const { return psi * jordan_matrix() * phi.adjoint(); }

bool SpectralDecomposition::all_real() const {
  return std::all_of(groups.begin(), groups.end(), [](const EigenGroup& g) { return g.kind == GroupKind::Real; });
}

bool SpectralDecomposition::diagonalizable() const {
  for (const auto& g : groups)
    for (std::size_t p : g.spec.block_dims)
      if (p != 1) return false;
  return true;
}

SpectralDecomposition make_decomposition(std::vector<EigenGroup> groups, CMatrix psi, const Tolerance& tol) {
  const std::size_t n = psi.rows();
  if (!psi.is_square()) fail(ErrorCode::DimensionMismatch, "basis must be square");
  std::size_t off = 0;
  for (auto& g : groups) {
    if (g.spec.block_dims.empty()) fail(ErrorCode::InvalidArgument, "group without Jordan blocks");
    for (std::size_t p : g.spec.block_dims)
      if (p == 0) fail(ErrorCode::InvalidArgument, "Jordan block of dimension 0");
    g.offset = off;
    off += g.spec.algebraic_multiplicity();
  }
  if (off != n) fail(ErrorCode::DimensionMismatch, "block dimensions do not add up to the basis size");
  SpectralDecomposition dec;
  dec.n = n;
  dec.groups = std::move(groups);
  try {
    dec.phi = inverse(psi, tol).adjoint();
  } catch (const Error& e) {
    if (e.code() != ErrorCode::Singular) throw;
    fail(ErrorCode::SingularBasis, "chain basis is singular at tolerance");
  }
  dec.psi = std::move(psi);
  return dec;
}

namespace {

struct Cluster {
  std::vector<std::size_t> members;  // positions on the Schur diagonal
  cplx mean;
  double radius = 0.0;
};

struct Node {
  std::vector<std::size_t> members;
  double height = 0.0;  // linkage distance at which the node formed
  int left = -1;
  int right = -1;
};

cplx mean_of(const CVector& lambda, const std::vector<std::size_t>& members) {
  cplx s{};
  for (std::size_t i : members) s += lambda[i];
  return s / static_cast<double>(members.size());
}

double radius_of(const CVector& lambda, const std::vector<std::size_t>& members, cplx mu) {
  double r = 0.0;
  for (std::size_t i : members) r = std::max(r, std::abs(lambda[i] - mu));
  return r;
}

// Single-linkage dendrogram over the Schur eigenvalues; returns the nodes
// with the root last.
std::vector<Node> dendrogram(const CVector& lambda) {
  const std::size_t n = lambda.size();
  std::vector<Node> nodes;
  nodes.reserve(2 * n);
  for (std::size_t i = 0; i < n; ++i) nodes.push_back(Node{{i}, 0.0, -1, -1});
  struct Edge {
    double d;
    std::size_t i, j;
  };
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) edges.push_back({std::abs(lambda[i] - lambda[j]), i, j});
  std::stable_sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) { return a.d < b.d; });

  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  std::vector<int> node_of(n);
  std::iota(node_of.begin(), node_of.end(), 0);
  std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const Edge& e : edges) {
    const std::size_t a = find(e.i), b = find(e.j);
    if (a == b) continue;
    Node merged;
    merged.left = node_of[a];
    merged.right = node_of[b];
    merged.height = e.d;
    merged.members = nodes[merged.left].members;
    const auto& rm = nodes[merged.right].members;
    merged.members.insert(merged.members.end(), rm.begin(), rm.end());
    std::sort(merged.members.begin(), merged.members.end());
    nodes.push_back(std::move(merged));
    parent[b] = a;
    node_of[a] = static_cast<int>(nodes.size() - 1);
  }
  return nodes;
}

// Reordered copy of a Schur form with the given diagonal positions first.
SchurForm leading(const SchurForm& base, const std::vector<std::size_t>& members) {
  SchurForm s = base;
  std::vector<bool> sel(s.t.rows(), false);
  for (std::size_t i : members) sel[i] = true;
  reorder_schur(s, sel);
  return s;
}

double power_threshold(const Tolerance& tol, std::size_t n, double hnorm, double nnorm, std::size_t k) {
  return tol.abs + tol.rel * static_cast<double>(n) * std::max(1.0, hnorm) *
                       std::pow(std::max(1.0, nnorm), static_cast<double>(k) - 1.0);
}

CMatrix shifted_block(const SchurForm& s, std::size_t m, cplx mu) {
  CMatrix nmat = s.t.block(0, 0, m, m);
  for (std::size_t i = 0; i < m; ++i) nmat(i, i) -= mu;
  return nmat;
}

// sqrt(1 + ||R||_F^2) for R solving T_aa R - R T_bb = T_ab, where the
// upper triangular t is split after its first `ma` rows. This is the norm of
// the spectral projector onto the leading invariant subspace. Tiny diagonal
// differences are bumped to eps ||t|| as in LAPACK's trevc, so coincident
// eigenvalues give a huge (not infinite) norm.
double projector_norm(const CMatrix& t, std::size_t ma, std::size_t mb) {
  const double smin = std::max(std::numeric_limits<double>::epsilon() * t.frobenius_norm(),
                               std::numeric_limits<double>::min());
  constexpr double kHuge = 1e150;
  CMatrix r(ma, mb);
  double sum2 = 0.0;
  for (std::size_t j = 0; j < mb; ++j) {
    const cplx lam = t(ma + j, ma + j);
    for (std::size_t i = ma; i-- > 0;) {
      cplx v = t(i, ma + j);
      for (std::size_t k = 0; k < j; ++k) v += r(i, k) * t(ma + k, ma + j);
      for (std::size_t l = i + 1; l < ma; ++l) v -= t(i, l) * r(l, j);
      cplx d = t(i, i) - lam;
      if (std::abs(d) < smin) d = smin;
      r(i, j) = v / d;
      if (!(std::abs(r(i, j)) < kHuge)) return kHuge;
      sum2 += std::norm(r(i, j));
    }
  }
  return std::sqrt(1.0 + sum2);
}

class Analyzer {
 public:
  Analyzer(const CMatrix& h, const Tolerance& tol, const AnalyzeOptions& opts)
      : tol_(tol), opts_(opts), n_(h.rows()), hnorm_(h.frobenius_norm()), base_(schur(h)) {
    lambda_.resize(n_);
    for (std::size_t i = 0; i < n_; ++i) lambda_[i] = base_.t(i, i);
  }

  SpectralDecomposition run() {
    find_clusters();
    check_separation();
    classify_and_pair();
    return assemble();
  }

 private:
  // Two sibling clusters are kept apart when a perturbation of size tol
  // cannot make their eigenvalues meet. That distance is estimated as
  // gap / (2 ||P||) with P the spectral projector separating them.
  bool inseparable(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) const {
    double gap = std::numeric_limits<double>::infinity();
    for (std::size_t i : a)
      for (std::size_t j : b) gap = std::min(gap, std::abs(lambda_[i] - lambda_[j]));
    std::vector<std::size_t> both = a;
    both.insert(both.end(), b.begin(), b.end());
    std::sort(both.begin(), both.end());
    SchurForm s = leading(base_, both);
    std::vector<bool> sel(n_, false);
    for (std::size_t k = 0; k < both.size(); ++k)
      sel[k] = std::find(a.begin(), a.end(), both[k]) != a.end();
    reorder_schur(s, sel);
    const double pn = projector_norm(s.t.block(0, 0, both.size(), both.size()), a.size(), b.size());
    return gap / (2.0 * pn) <= tol_.threshold(n_, hnorm_);
  }

  // A set of diagonal positions is one eigenvalue cluster only when the
  // matching Schur block minus its mean is nilpotent at tolerance.
  bool nilpotent_cluster(const std::vector<std::size_t>& members) const {
    const std::size_t m = members.size();
    const cplx mu = mean_of(lambda_, members);
    const double r = radius_of(lambda_, members, mu);
    // rho(N)^m <= ||N^m||, so a radius above thr^(1/m) cannot pass.
    const double nbound = hnorm_ + std::abs(mu) * std::sqrt(static_cast<double>(m));
    if (r > std::pow(power_threshold(tol_, n_, hnorm_, nbound, m), 1.0 / static_cast<double>(m))) return false;
    const SchurForm s = leading(base_, members);
    const CMatrix nmat = shifted_block(s, m, mu);
    CMatrix pw = nmat;
    for (std::size_t k = 1; k < m; ++k) pw = pw * nmat;
    return rank_above(pw, power_threshold(tol_, n_, hnorm_, nmat.frobenius_norm(), m)) == 0;
  }

  void find_clusters() {
    if (n_ == 0) return;
    const std::vector<Node> nodes = dendrogram(lambda_);
    std::vector<int> stack{static_cast<int>(nodes.size() - 1)};
    while (!stack.empty()) {
      const Node& node = nodes[stack.back()];
      stack.pop_back();
      bool accept = node.members.size() == 1;
      if (!accept && opts_.cluster_radius > 0.0) {
        accept = node.height <= opts_.cluster_radius;
      } else if (!accept) {
        accept = inseparable(nodes[node.left].members, nodes[node.right].members) && nilpotent_cluster(node.members);
      }
      if (accept) {
        Cluster c{node.members, mean_of(lambda_, node.members), 0.0};
        c.radius = radius_of(lambda_, c.members, c.mean);
        clusters_.push_back(std::move(c));
      } else {
        stack.push_back(node.right);
        stack.push_back(node.left);
      }
    }
  }

  double cluster_distance(const Cluster& a, const Cluster& b) const {
    double d = std::numeric_limits<double>::infinity();
    for (std::size_t i : a.members)
      for (std::size_t j : b.members) d = std::min(d, std::abs(lambda_[i] - lambda_[j]));
    return d;
  }

  // Clusters closer than 10x their radius are merged when the union is
  // still one eigenvalue (interleaved copies of equal Jordan blocks end up
  // in different dendrogram branches); otherwise the input is ambiguous.
  void check_separation() {
    const double floor = tol_.threshold(n_, hnorm_);
    bool merged = true;
    while (merged) {
      merged = false;
      for (std::size_t a = 0; a < clusters_.size() && !merged; ++a) {
        for (std::size_t b = a + 1; b < clusters_.size() && !merged; ++b) {
          const double d = cluster_distance(clusters_[a], clusters_[b]);
          const double r = std::max(clusters_[a].radius, clusters_[b].radius);
          if (d > 10.0 * r && d > floor) continue;
          std::vector<std::size_t> both = clusters_[a].members;
          both.insert(both.end(), clusters_[b].members.begin(), clusters_[b].members.end());
          std::sort(both.begin(), both.end());
          if (opts_.cluster_radius > 0.0 || !nilpotent_cluster(both)) {
            std::ostringstream msg;
            msg << "eigenvalue clusters near " << clusters_[a].mean << " and " << clusters_[b].mean
                << " are separated by " << d << ", not more than 10x their radius " << r;
            fail(ErrorCode::ClusterAmbiguity, msg.str());
          }
          clusters_[a].members = both;
          clusters_[a].mean = mean_of(lambda_, both);
          clusters_[a].radius = radius_of(lambda_, both, clusters_[a].mean);
          clusters_.erase(clusters_.begin() + static_cast<std::ptrdiff_t>(b));
          merged = true;
        }
      }
    }
    for (const auto& c : clusters_) {
      if (c.members.size() > 1 && 2.0 * c.radius > floor) {
        std::ostringstream msg;
        msg << c.members.size() << " eigenvalues spread over " << 2.0 * c.radius << " around " << c.mean
            << " were merged into one group";
        warnings_.push_back(msg.str());
      }
    }
  }

  bool is_real(cplx mu) const {
    const double thr = std::max(tol_.abs + tol_.rel * std::abs(mu), tol_.threshold(n_, hnorm_));
    return std::abs(mu.imag()) <= thr;
  }

  void classify_and_pair() {
    const std::size_t k = clusters_.size();
    kind_.assign(k, GroupKind::Real);
    pair_of_.assign(k, std::string::npos);
    structure_.resize(k);
    for (std::size_t c = 0; c < k; ++c) {
      if (is_real(clusters_[c].mean)) {
        clusters_[c].mean = clusters_[c].mean.real();
      } else {
        kind_[c] = clusters_[c].mean.imag() > 0.0 ? GroupKind::PlusMember : GroupKind::MinusMember;
      }
    }
    for (std::size_t c = 0; c < k; ++c) structure_[c] = jordan_dims(clusters_[c]);

    const double floor = tol_.threshold(n_, hnorm_);
    for (std::size_t a = 0; a < k; ++a) {
      if (kind_[a] != GroupKind::PlusMember) continue;
      const cplx target = std::conj(clusters_[a].mean);
      std::size_t best = std::string::npos;
      double best_d = std::numeric_limits<double>::infinity();
      for (std::size_t b = 0; b < k; ++b) {
        if (kind_[b] != GroupKind::MinusMember || pair_of_[b] != std::string::npos) continue;
        const double d = std::abs(clusters_[b].mean - target);
        if (d < best_d) {
          best_d = d;
          best = b;
        }
      }
      const double allowed =
          best == std::string::npos ? 0.0 : std::max(floor, 10.0 * (clusters_[a].radius + clusters_[best].radius));
      if (best == std::string::npos || best_d > allowed) {
        std::ostringstream msg;
        msg << "complex eigenvalue " << clusters_[a].mean << " has no conjugate partner";
        fail(ErrorCode::NotPaired, msg.str());
      }
      if (structure_[a] != structure_[best]) {
        std::ostringstream msg;
        msg << "conjugate eigenvalues " << clusters_[a].mean << " and " << clusters_[best].mean
            << " have different Jordan structures";
        fail(ErrorCode::NotPaired, msg.str());
      }
      pair_of_[a] = best;
      pair_of_[best] = a;
      const cplx snapped = 0.5 * (clusters_[a].mean + std::conj(clusters_[best].mean));
      clusters_[a].mean = snapped;
      clusters_[best].mean = std::conj(snapped);
    }
    for (std::size_t c = 0; c < k; ++c) {
      if (kind_[c] != GroupKind::Real && pair_of_[c] == std::string::npos) {
        std::ostringstream msg;
        msg << "complex eigenvalue " << clusters_[c].mean << " has no conjugate partner";
        fail(ErrorCode::NotPaired, msg.str());
      }
    }
  }

  struct Structure {
    std::vector<std::size_t> nullity;  // nullity[k] of N^k, nullity[0] = 0
    std::vector<CMatrix> kernels;      // kernels[k] basis of ker N^k
    CMatrix nmat;
    CMatrix v;                         // invariant-subspace basis, n x m
  };

  Structure structure(const Cluster& c) const {
    const std::size_t m = c.members.size();
    const SchurForm s = leading(base_, c.members);
    Structure st;
    st.v = s.q.leading_cols(m);
    st.nmat = shifted_block(s, m, c.mean);
    const double nnorm = st.nmat.frobenius_norm();
    st.nullity.push_back(0);
    st.kernels.push_back(CMatrix(m, 0));
    CMatrix pw = CMatrix::identity(m);
    for (std::size_t k = 1; k <= m; ++k) {
      pw = pw * st.nmat;
      const double thr = power_threshold(tol_, n_, hnorm_, nnorm, k);
      st.kernels.push_back(null_space(pw, thr));
      st.nullity.push_back(st.kernels.back().cols());
      if (st.nullity.back() == m) break;
    }
    if (st.nullity.back() != m) {
      std::ostringstream msg;
      msg << "cluster at " << c.mean << " is not a single eigenvalue at tolerance";
      fail(ErrorCode::ClusterAmbiguity, msg.str());
    }
    return st;
  }

  std::vector<std::size_t> jordan_dims(const Cluster& c) const {
    const Structure st = structure(c);
    const std::size_t kmax = st.nullity.size() - 1;
    std::vector<std::size_t> weyr(kmax + 2, 0);
    for (std::size_t k = 1; k <= kmax; ++k) {
      if (st.nullity[k] < st.nullity[k - 1]) fail(ErrorCode::ClusterAmbiguity, "kernel dimensions decrease");
      weyr[k] = st.nullity[k] - st.nullity[k - 1];
      if (k > 1 && weyr[k] > weyr[k - 1]) {
        std::ostringstream msg;
        msg << "rank staircase at " << c.mean << " is not a valid Jordan structure";
        fail(ErrorCode::ClusterAmbiguity, msg.str());
      }
    }
    std::vector<std::size_t> dims;
    for (std::size_t k = kmax; k >= 1; --k)
      for (std::size_t j = 0; j < weyr[k] - weyr[k + 1]; ++j) dims.push_back(k);
    return dims;
  }

  // Chains for one cluster, longest first, already in the gauge: psi_1 of
  // unit norm with its first nonzero entry real positive.
  std::vector<CVector> chains(const Cluster& c, const std::vector<std::size_t>& dims) const {
    const Structure st = structure(c);
    const std::size_t m = c.members.size();
    struct Top {
      CVector x;
      std::size_t len;
    };
    std::vector<Top> tops;
    const std::size_t pmax = dims.front();
    for (std::size_t k = pmax; k >= 1; --k) {
      const std::size_t need = static_cast<std::size_t>(std::count(dims.begin(), dims.end(), k));
      if (need == 0) continue;
      std::vector<CVector> wcols;
      for (std::size_t j = 0; j < st.kernels[k - 1].cols(); ++j) wcols.push_back(st.kernels[k - 1].col(j));
      for (const Top& t : tops) {
        CVector y = t.x;
        for (std::size_t p = k; p < t.len; ++p) y = st.nmat * y;
        wcols.push_back(y);
      }
      CMatrix kk = st.kernels[k];
      if (!wcols.empty()) {
        const CMatrix w = CMatrix::from_columns(wcols);
        const CMatrix qw = orthonormal_basis(w, tol_.threshold(m, w.frobenius_norm()));
        kk -= qw * (qw.adjoint() * kk);
      }
      const Svd sv = svd(kk.adjoint());
      // Left singular vectors of kk are the right ones of its adjoint.
      if (sv.sigma.size() < need || sv.sigma[need - 1] <= tol_.threshold(m, 1.0)) {
        fail(ErrorCode::ClusterAmbiguity, "could not complete the Jordan chains at tolerance");
      }
      for (std::size_t j = 0; j < need; ++j) tops.push_back(Top{sv.v.col(j), k});
    }

    std::vector<CVector> out;
    for (const Top& t : tops) {
      std::vector<CVector> local(t.len);
      local[t.len - 1] = t.x;
      for (std::size_t i = t.len - 1; i-- > 0;) local[i] = st.nmat * local[i + 1];
      std::vector<CVector> full(t.len);
      for (std::size_t i = 0; i < t.len; ++i) full[i] = st.v * local[i];
      const double nrm = norm2(full[0]);
      cplx phase = 1.0;
      const double cut = tol_.threshold(n_, 1.0) * nrm;
      for (const cplx& z : full[0]) {
        if (std::abs(z) > cut) {
          phase = z / std::abs(z);
          break;
        }
      }
      const cplx scale = std::conj(phase) / nrm;
      for (auto& vec : full) {
        for (auto& z : vec) z *= scale;
        out.push_back(std::move(vec));
      }
    }
    return out;
  }

  SpectralDecomposition assemble() {
    // Order: real groups and pairs by (Re, |Im|), pair members adjacent.
    std::vector<std::size_t> units;
    for (std::size_t c = 0; c < clusters_.size(); ++c)
      if (kind_[c] != GroupKind::MinusMember) units.push_back(c);
    std::stable_sort(units.begin(), units.end(), [&](std::size_t a, std::size_t b) {
      const cplx x = clusters_[a].mean, y = clusters_[b].mean;
      if (x.real() != y.real()) return x.real() < y.real();
      return x.imag() < y.imag();
    });
    std::vector<EigenGroup> groups;
    std::vector<CVector> columns;
    int next_pair = 0;
    auto emit = [&](std::size_t c, int pair_id) {
      EigenGroup g;
      g.spec.eigenvalue = clusters_[c].mean;
      g.spec.block_dims = structure_[c];
      g.kind = kind_[c];
      g.pair_id = pair_id;
      groups.push_back(g);
      for (auto& v : chains(clusters_[c], structure_[c])) columns.push_back(std::move(v));
    };
    for (std::size_t c : units) {
      if (kind_[c] == GroupKind::Real) {
        emit(c, -1);
      } else {
        emit(c, next_pair);
        emit(pair_of_[c], next_pair);
        ++next_pair;
      }
    }
    SpectralDecomposition dec;
    try {
      dec = make_decomposition(std::move(groups), n_ == 0 ? CMatrix() : CMatrix::from_columns(columns), tol_);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::SingularBasis) throw;
      fail(ErrorCode::ClusterAmbiguity, "recovered chain basis is singular at tolerance");
    }
    dec.warnings = warnings_;
    return dec;
  }

  Tolerance tol_;
  AnalyzeOptions opts_;
  std::size_t n_;
  double hnorm_;
  SchurForm base_;
  CVector lambda_;
  std::vector<Cluster> clusters_;
  std::vector<GroupKind> kind_;
  std::vector<std::size_t> pair_of_;
  std::vector<std::vector<std::size_t>> structure_;
  std::vector<std::string> warnings_;
};

}  // namespace

SpectralDecomposition analyze(const CMatrix& h, const Tolerance& tol, const AnalyzeOptions& opts) {
  tol.validate();
  if (!h.is_square()) fail(ErrorCode::DimensionMismatch, "analyze: matrix must be square");
  if (!h.all_finite()) fail(ErrorCode::InvalidArgument, "analyze: matrix has non-finite entries");
  if (h.rows() > opts.max_dim) fail(ErrorCode::InvalidArgument, "analyze: dimension exceeds the configured maximum");
  return Analyzer(h, tol, opts).run();
}

BiorthonormalReport check_biorthonormal(const SpectralDecomposition& dec) {
  const CMatrix id = CMatrix::identity(dec.n);
  return {(dec.phi.adjoint() * dec.psi - id).max_abs(), (dec.psi * dec.phi.adjoint() - id).max_abs()};
}

double chain_residual(const SpectralDecomposition& dec, const CMatrix& h) {
  return distance(h * dec.psi, dec.psi * dec.jordan_matrix());
}

bool is_pseudo_hermitian(const CMatrix& h, const CMatrix& eta, const Tolerance& tol) {
  tol.validate();
  if (!h.is_square() || eta.rows() != h.rows() || !eta.is_square())
    fail(ErrorCode::DimensionMismatch, "is_pseudo_hermitian: dimension mismatch");
  if (!is_hermitian(eta, tol)) fail(ErrorCode::NonHermitianMetric, "metric is not Hermitian");
  CMatrix eta_inv;
  try {
    eta_inv = inverse(eta, tol);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::Singular) throw;
    fail(ErrorCode::SingularMetric, "metric is singular at tolerance");
  }
  const CMatrix lhs = eta * h * eta_inv;
  const double scale = std::max(h.frobenius_norm(), lhs.frobenius_norm());
  return distance(lhs, h.adjoint()) <= tol.threshold(h.rows(), scale);
}

}  // namespace pseudoherm
