#include <algorithm>
#include <random>

#include "ginv/conditions.hpp"

namespace ginv {

namespace {

constexpr int kMaxAttempts = 96;
constexpr double kSatisfiedTol = 1e-12;
constexpr double kViolatedTol = 1e-3;

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (salt + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

class Draw {
 public:
  explicit Draw(std::uint64_t seed) : rng_(seed) {}

  std::size_t below(std::size_t k) { return k == 0 ? 0 : static_cast<std::size_t>(rng_() % k); }
  int between(int lo, int hi) { return lo + static_cast<int>(below(static_cast<std::size_t>(hi - lo + 1))); }
  bool coin() { return below(2) == 1; }

  Complex lattice_entry(bool gaussian) {
    const double re = between(-2, 2);
    const double im = gaussian ? between(-1, 1) : 0;
    return {re, im};
  }

  /// Nonzero scalar of modulus in {0.5, 1, 1.5, 2} and phase in {1, -1, i, -i}.
  Complex unit_scale() {
    static constexpr double kMod[] = {0.5, 1.0, 1.5, 2.0};
    static const Complex kPhase[] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
    return kMod[below(4)] * kPhase[below(4)];
  }

  Matrix lattice(std::size_t rows, std::size_t cols, bool gaussian) {
    Matrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = lattice_entry(gaussian);
    }
    return m;
  }

 private:
  std::mt19937_64 rng_;
};

/// Unimodular integer S and its exact inverse, as a product of elementary
/// row operations with multipliers in {-2, ..., 2}. Draws with
/// ||S||_F ||S^-1||_F above kMaxSimilarityCondition times n are redrawn.
struct Similarity {
  Matrix s;
  Matrix s_inv;
};

constexpr double kMaxSimilarityCondition = 8.0;

Similarity unimodular(std::size_t n, Draw& draw) {
  for (;;) {
    Similarity sim{Matrix::identity(n), Matrix::identity(n)};
    if (n < 2) return sim;
    for (std::size_t t = 0; t < n + 1; ++t) {
      const std::size_t i = draw.below(n);
      std::size_t j = draw.below(n - 1);
      if (j >= i) ++j;
      const double c = draw.between(-2, 2);
      if (c == 0.0) continue;
      // S <- (I + c e_i e_j^T) S, S^-1 <- S^-1 (I - c e_i e_j^T)
      for (std::size_t k = 0; k < n; ++k) sim.s(i, k) += c * sim.s(j, k);
      for (std::size_t k = 0; k < n; ++k) sim.s_inv(k, j) -= c * sim.s_inv(k, i);
    }
    if (frobenius_norm(sim.s) * frobenius_norm(sim.s_inv) <=
        kMaxSimilarityCondition * static_cast<double>(n)) {
      return sim;
    }
  }
}

/// Direct sum of nilpotent Jordan blocks of size at most `max_block`; the
/// first block has the largest admissible size so the index is min(s, max_block).
Matrix jordan_nilpotent(std::size_t s, std::size_t max_block, Draw& draw) {
  Matrix n(s, s);
  std::size_t at = 0;
  bool first = true;
  while (at < s) {
    const std::size_t room = std::min(max_block, s - at);
    const std::size_t size = first ? room : 1 + draw.below(room);
    first = false;
    for (std::size_t t = 0; t + 1 < size; ++t) n(at + t, at + t + 1) = 1.0;
    at += size;
  }
  return n;
}

/// T diag(d) T^-1 with T unimodular. `zeros` entries of d are 0, the rest
/// nonzero; the result has index <= 1.
Matrix diagonalizable(std::size_t s, std::size_t zeros, Draw& draw) {
  std::vector<Complex> d(s);
  for (std::size_t k = 0; k < s; ++k) d[k] = k < zeros ? Complex{} : draw.unit_scale();
  std::shuffle(d.begin(), d.end(), std::mt19937_64(draw.below(1u << 30)));
  const Similarity t = unimodular(s, draw);
  return t.s * Matrix::diagonal(d) * t.s_inv;
}

/// T (J (+) D) T^-1 with J a nilpotent Jordan block of size 2: index >= 2.
Matrix index_two(std::size_t s, Draw& draw) {
  if (s < 2) throw InfeasibleRecipeError("generate: no room for an index-two corner");
  Matrix core = Matrix::zeros(s);
  core(0, 1) = 1.0;
  for (std::size_t k = 2; k < s; ++k) core(k, k) = draw.coin() ? Complex{} : draw.unit_scale();
  const Similarity t = unimodular(s, draw);
  return t.s * core * t.s_inv;
}

/// Rank-r part and nilpotent part of F in the canonical basis.
struct Basis {
  std::size_t n = 0;
  std::size_t r = 0;
  std::size_t s = 0;
  Matrix c;        // r x r diagonal, invertible
  Matrix nil;      // s x s nilpotent
  Matrix e_block;  // E in the canonical basis
  std::optional<Complex> lambda;
};

void put(Matrix& target, std::size_t row, std::size_t col, const Matrix& b) {
  if (!b.empty()) target.set_block(row, col, b);
}

Basis make_basis(std::size_t n, std::size_t r, std::size_t max_block, Draw& draw) {
  Basis b;
  b.n = n;
  b.r = r;
  b.s = n - r;
  std::vector<Complex> c(r);
  for (auto& z : c) z = draw.unit_scale();
  b.c = Matrix::diagonal(c);
  b.nil = jordan_nilpotent(b.s, max_block, draw);
  b.e_block = Matrix::zeros(n);
  return b;
}

/// U V^T with the columns of U standard vectors in ker N^2 and rows of V
/// cleared wherever N U is nonzero, so that (U V^T) N (U V^T) = 0. With
/// `outside` the columns of U are taken outside ker N^2 instead, which keeps
/// (U V^T) N (U V^T) = 0 but makes N^2 U V^T nonzero.
Matrix square_null_product(const Matrix& nil, bool gaussian, Draw& draw, bool outside = false) {
  const std::size_t s = nil.rows();
  Matrix out(s, s);
  if (s == 0) return out;
  const Matrix n2 = nil * nil;
  std::vector<std::size_t> kernel;
  for (std::size_t j = 0; j < s; ++j) {
    bool zero = true;
    for (std::size_t i = 0; i < s; ++i) zero = zero && n2(i, j) == Complex{};
    if (zero != outside) kernel.push_back(j);
  }
  if (kernel.empty()) return out;
  const std::size_t m = 1 + draw.below(kernel.size());
  std::shuffle(kernel.begin(), kernel.end(), std::mt19937_64(draw.below(1u << 30)));
  Matrix u(s, m);
  for (std::size_t a = 0; a < m; ++a) u(kernel[a], a) = 1.0;
  const Matrix nu = nil * u;
  Matrix v = draw.lattice(s, m, gaussian);
  for (std::size_t row = 0; row < s; ++row) {
    bool hit = false;
    for (std::size_t a = 0; a < m; ++a) hit = hit || nu(row, a) != Complex{};
    if (hit) {
      for (std::size_t a = 0; a < m; ++a) v(row, a) = 0.0;
    }
  }
  return u * transpose(v);
}

/// Knobs a recipe can turn to break one condition.
struct Knobs {
  bool singular_corner = false;  // E22 singular (or of index two)
  bool nilpotent_f = false;      // F not group invertible
  bool coupling = false;         // fill the block a hypothesis forces to zero
  bool perturb = false;          // single lattice perturbation of E
  bool deep_corner = false;      // E22 reaching past ker N^2
};

Knobs knobs_for(const std::string& violate) {
  Knobs k;
  if (violate.empty()) return k;
  if (violate == "EpiFpi" || violate == "FpiEpi" || violate == "EEpiFpi" ||
      violate == "FpiEpiE" || violate == "E_group") {
    k.singular_corner = true;
  } else if (violate == "F_group") {
    k.nilpotent_f = true;
  } else if (violate == "FEFpi" || violate == "FpiEF" || violate == "FEFpi|FpiEF") {
    k.coupling = true;
  } else if (violate == "F2EFpi") {
    k.deep_corner = true;
  } else {
    k.perturb = true;
  }
  return k;
}

// F-basis blocks of E: [[E11, E12], [E21, E22]] with E11 r x r.
void set_corners(Basis& b, const Matrix& e11, const Matrix& e12, const Matrix& e21,
                 const Matrix& e22) {
  put(b.e_block, 0, 0, e11);
  put(b.e_block, 0, b.r, e12);
  put(b.e_block, b.r, 0, e21);
  put(b.e_block, b.r, b.r, e22);
}

Basis build_drazin_family(FormulaId id, std::size_t n, const Knobs& k, bool gaussian, Draw& draw) {
  if (k.deep_corner && n < 2) {
    throw InfeasibleRecipeError("generate: F^2 E F^pi = 0 is forced at n = 1");
  }
  if (k.deep_corner && (n < 3 || draw.coin())) {
    // E' = [[0, E12], [0, 0]]: EFEF^pi = 0 while F^2 E F^pi = [[0, C^2 E12], [0, 0]].
    const std::size_t r = 1 + draw.below(n - 1);
    Basis b = make_basis(n, r, 1 + draw.below(3), draw);
    set_corners(b, Matrix(r, r), draw.lattice(r, b.s, gaussian), Matrix(b.s, r), Matrix(b.s, b.s));
    return b;
  }
  const std::size_t max_block = k.deep_corner ? 3 : 1 + draw.below(3);
  const std::size_t r = k.deep_corner          ? draw.below(n - 2)
                        : id == FormulaId::thm23 ? draw.below(n)
                                                 : draw.below(n + 1);
  Basis b = make_basis(n, r, max_block, draw);
  const Matrix e22 = square_null_product(b.nil, gaussian, draw, k.deep_corner);
  if (id == FormulaId::thm23) {
    // E' = [[0, 0], [U W^T, U V^T]] with the same U as E22.
    Matrix e21(b.s, r);
    if (b.s > 0 && r > 0) {
      // Rows of E21 may be nonzero only where E22 has nonzero rows (range of U).
      const Matrix w = draw.lattice(b.s, r, gaussian);
      for (std::size_t i = 0; i < b.s; ++i) {
        bool in_range = false;
        for (std::size_t j = 0; j < b.s; ++j) in_range = in_range || e22(i, j) != Complex{};
        if (in_range) {
          for (std::size_t j = 0; j < r; ++j) e21(i, j) = w(i, j);
        }
      }
    }
    set_corners(b, Matrix(r, r), Matrix(r, b.s), e21, e22);
  } else {
    set_corners(b, draw.lattice(r, r, gaussian), Matrix(r, b.s), draw.lattice(b.s, r, gaussian),
                e22);
  }
  return b;
}

Basis build_group_family(FormulaId id, std::size_t n, const Knobs& k, bool gaussian,
                         std::uint64_t seed, Draw& draw) {
  const bool needs_two = k.singular_corner && id != FormulaId::thm31 &&
                         id != FormulaId::cor32 && id != FormulaId::thm33 &&
                         id != FormulaId::cor34 && id != FormulaId::cor35;
  std::size_t r;
  if (k.singular_corner || k.coupling || k.nilpotent_f) {
    const std::size_t reserve = needs_two || k.nilpotent_f ? 2 : 1;
    if (n < reserve) throw InfeasibleRecipeError("generate: dimension too small for violation");
    r = draw.below(n - reserve + 1);
    if (k.coupling && r == 0 && n >= 2) r = 1;
  } else {
    r = draw.below(n + 1);
  }
  Basis b = make_basis(n, r, k.nilpotent_f ? 2 : 1, draw);
  const std::size_t s = b.s;

  // Corner E22: invertible (existence of the group inverse for the E-F
  // projector clauses) or index <= 1 (the E E^pi F^pi clause).
  const bool index_one_corner =
      id == FormulaId::thm41 || id == FormulaId::cor42 || id == FormulaId::cor43;
  Matrix e22;
  if (k.singular_corner) {
    e22 = index_one_corner || needs_two ? index_two(s, draw)
                                        : diagonalizable(s, 1 + draw.below(s), draw);
  } else if (index_one_corner) {
    e22 = diagonalizable(s, s == 0 ? 0 : draw.below(s + 1), draw);
  } else {
    e22 = diagonalizable(s, 0, draw);
  }
  const Matrix off = draw.lattice(s, r, gaussian);
  const Matrix off_t = draw.lattice(r, s, gaussian);

  bool lower = true;  // E12 = 0 (FEF^pi family); otherwise E21 = 0
  switch (id) {
    case FormulaId::thm31:
    case FormulaId::cor32:
    case FormulaId::thm41:
      lower = true;
      break;
    case FormulaId::thm33:
    case FormulaId::cor34:
    case FormulaId::cor42:
      lower = false;
      break;
    case FormulaId::cor43:
      lower = seed % 2 == 0;
      break;
    default:
      break;
  }

  if (id == FormulaId::cor43) {
    const Matrix e11 = diagonalizable(r, 0, draw);
    set_corners(b, e11, lower ? Matrix(r, s) : off_t, lower ? off : Matrix(s, r), e22);
  } else {
    const Matrix e11 = draw.lattice(r, r, gaussian);
    set_corners(b, e11, lower ? Matrix(r, s) : off_t, lower ? off : Matrix(s, r), e22);
  }
  if (k.coupling) {
    // Fill the forced-zero block.
    if (lower) {
      put(b.e_block, 0, r, draw.lattice(r, s, gaussian));
    } else {
      put(b.e_block, r, 0, draw.lattice(s, r, gaussian));
    }
  }
  return b;
}

/// Commutation families: EF = lambda FE with lambda in {1, 0, -1}, or
/// EF^2 = FEF. F is group invertible throughout.
Basis build_commuting_family(FormulaId id, std::size_t n, const Knobs& k, Draw& draw) {
  const bool e_group = id == FormulaId::cor44;
  std::size_t mode = draw.below(4);
  if (mode == 2 && n < 2) mode = 0;
  std::size_t r;
  if (k.singular_corner || k.nilpotent_f) {
    const std::size_t reserve = k.nilpotent_f || (k.singular_corner && e_group) ? 2 : 1;
    if (n < reserve) throw InfeasibleRecipeError("generate: dimension too small for violation");
    r = draw.below(n - reserve + 1);
  } else {
    r = mode == 2 ? 2 + draw.below(n - 1) : draw.below(n + 1);
  }
  Basis b = make_basis(n, r, k.nilpotent_f ? 2 : 1, draw);
  const std::size_t s = b.s;

  Matrix e22;
  if (k.singular_corner) {
    e22 = e_group ? index_two(s, draw) : diagonalizable(s, 1 + draw.below(s), draw);
  } else if (e_group && mode == 3) {
    e22 = diagonalizable(s, draw.below(s + 1), draw);
  } else {
    e22 = diagonalizable(s, 0, draw);
  }

  auto diag_r = [&](bool invertible) {
    std::vector<Complex> d(r);
    for (auto& z : d) z = invertible || draw.coin() ? draw.unit_scale() : Complex{};
    return Matrix::diagonal(d);
  };

  switch (mode) {
    case 0: {  // lambda = 1: E, F simultaneously diagonal in the basis
      std::vector<Complex> d(s);
      for (std::size_t i = 0; i < s; ++i) d[i] = k.singular_corner && i == 0 ? Complex{} : draw.unit_scale();
      set_corners(b, diag_r(false), Matrix(r, s), Matrix(s, r), Matrix::diagonal(d));
      b.lambda = Complex{1.0};
      break;
    }
    case 1:  // lambda = 0: EF = 0
      set_corners(b, Matrix(r, r), draw.lattice(r, s, false), Matrix(s, r), e22);
      b.lambda = Complex{0.0};
      break;
    case 2: {  // lambda = -1: C pairs (c, -c), E11 anti-diagonal on each pair
      Matrix e11(r, r);
      for (std::size_t i = 0; i + 1 < r; i += 2) {
        b.c(i + 1, i + 1) = -b.c(i, i);
        e11(i, i + 1) = draw.unit_scale();
        e11(i + 1, i) = draw.unit_scale();
      }
      set_corners(b, e11, Matrix(r, s), Matrix(s, r), e22);
      b.lambda = Complex{-1.0};
      break;
    }
    default:  // EF^2 = FEF: E11 diagonal, E21 = 0
      set_corners(b, diag_r(e_group), draw.lattice(r, s, false), Matrix(s, r), e22);
      b.lambda = std::nullopt;
      break;
  }
  return b;
}

BlockPair realize(const Basis& b, FormulaId id, Draw& draw) {
  const Similarity sim = unimodular(b.n, draw);
  Matrix f_block = Matrix::zeros(b.n);
  put(f_block, 0, 0, b.c);
  put(f_block, b.r, b.r, b.nil);
  BlockPair pair;
  pair.f = sim.s * f_block * sim.s_inv;
  pair.e = sim.s * b.e_block * sim.s_inv;
  pair.pattern = pattern_of(id);
  pair.lambda = b.lambda;
  return pair;
}

void perturb_once(BlockPair& pair, Draw& draw) {
  const std::size_t n = pair.e.rows();
  Complex delta = draw.lattice_entry(false);
  if (delta == Complex{}) delta = 1.0;
  pair.e(draw.below(n), draw.below(n)) += delta;
}

bool acceptable(const BlockPair& pair, FormulaId id, const std::string& violate) {
  const ConditionReport report = check_conditions(pair.e, pair.f, id, kDefaultTol, pair.lambda);
  const double scale = condition_threshold(pair.e, pair.f, 1.0);
  bool found = violate.empty();
  for (const auto& entry : report.entries) {
    if (entry.name == violate) {
      if (entry.residual < kViolatedTol * scale) return false;
      found = true;
    } else if (entry.residual > kSatisfiedTol * scale) {
      return false;
    }
  }
  return found;
}

}  // namespace

BlockPair generate(const GeneratorRecipe& recipe) {
  if (recipe.dimension == 0) throw std::invalid_argument("generate: dimension must be >= 1");
  const auto names = condition_names(recipe.formula);
  if (!recipe.violate.empty() &&
      std::find(names.begin(), names.end(), recipe.violate) == names.end()) {
    throw InfeasibleRecipeError("generate: " + recipe.violate + " is not a condition of " +
                                std::string(to_string(recipe.formula)));
  }
  const Knobs knobs = knobs_for(recipe.violate);
  const std::size_t n = recipe.dimension;

  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    Draw draw(mix_seed(recipe.seed, static_cast<std::uint64_t>(attempt)));
    const bool gaussian = draw.below(3) == 0;
    Basis basis;
    switch (recipe.formula) {
      case FormulaId::thm23:
      case FormulaId::thm25:
      case FormulaId::cor26:
      case FormulaId::thm27:
        basis = build_drazin_family(recipe.formula, n, knobs, gaussian, draw);
        break;
      case FormulaId::cor35:
      case FormulaId::cor44:
        basis = build_commuting_family(recipe.formula, n, knobs, draw);
        break;
      default:
        basis = build_group_family(recipe.formula, n, knobs, gaussian, recipe.seed, draw);
        break;
    }
    BlockPair pair = realize(basis, recipe.formula, draw);
    if (knobs.perturb) {
      perturb_once(pair, draw);
      if (recipe.violate == "commutation") pair.lambda.reset();
    }
    if (acceptable(pair, recipe.formula, recipe.violate)) return pair;
  }
  throw InfeasibleRecipeError("generate: no instance of " + std::string(to_string(recipe.formula)) +
                              (recipe.violate.empty() ? "" : " violating " + recipe.violate) +
                              " found at n = " + std::to_string(n));
}

}  // namespace ginv
