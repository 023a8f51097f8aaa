#include "support.hpp"

namespace ginv {
namespace {

using test::close;

const Complex kI{0.0, 1.0};

TEST(Matrix, RejectsNonFiniteEntries) {
  EXPECT_THROW(Matrix({{1.0, std::nan("")}}), std::invalid_argument);
  EXPECT_THROW(Matrix(1, 1, {Complex{0.0, INFINITY}}), std::invalid_argument);
}

TEST(Matrix, ConstructorChecksDataLength) {
  EXPECT_THROW(Matrix(2, 2, std::vector<Complex>(3)), std::invalid_argument);
}

TEST(Matrix, AddIdentities) {
  EXPECT_EQ(Matrix::zeros(2) + Matrix::zeros(2), Matrix::zeros(2));
  std::mt19937_64 rng(1);
  const Matrix a = test::random_matrix(rng, 3, 2);
  EXPECT_EQ(a + (-a), Matrix::zeros(3, 2));
  EXPECT_EQ(Matrix({{1.0}}) + Matrix({{kI}}), Matrix({{Complex{1.0, 1.0}}}));
}

TEST(Matrix, ShapeMismatchThrows) {
  EXPECT_THROW(Matrix::zeros(2) + Matrix::zeros(3), ShapeError);
  EXPECT_THROW(Matrix::zeros(2, 3) * Matrix::zeros(2, 3), ShapeError);
}

TEST(Matrix, MultiplyLaws) {
  std::mt19937_64 rng(2);
  const Matrix a = test::random_matrix(rng, 3, 3);
  EXPECT_EQ(Matrix::identity(3) * a, a);
  EXPECT_EQ(a * Matrix::zeros(3), Matrix::zeros(3));
  const Matrix n = test::jordan(2);
  EXPECT_EQ(n * n, Matrix::zeros(2));
}

TEST(Matrix, MultiplicationIsAssociative) {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 50; ++t) {
    std::uniform_int_distribution<std::size_t> dim(1, 8);
    const std::size_t p = dim(rng), q = dim(rng), r = dim(rng), s = dim(rng);
    const Matrix a = test::random_matrix(rng, p, q);
    const Matrix b = test::random_matrix(rng, q, r);
    const Matrix c = test::random_matrix(rng, r, s);
    EXPECT_TRUE(close((a * b) * c, a * (b * c), 1e-12));
  }
}

TEST(Matrix, Transposes) {
  EXPECT_EQ(transpose(Matrix::identity(3)), Matrix::identity(3));
  std::mt19937_64 rng(4);
  const Matrix a = test::random_matrix(rng, 2, 3);
  EXPECT_EQ(transpose(transpose(a)), a);
  EXPECT_EQ(transpose(Matrix({{kI, kI}, {0.0, 0.0}})), Matrix({{kI, 0.0}, {kI, 0.0}}));
  EXPECT_EQ(conj_transpose(Matrix({{kI, 2.0}})), Matrix({{-kI}, {2.0}}));
}

TEST(Matrix, FrobeniusNorm) {
  EXPECT_EQ(frobenius_norm(Matrix::zeros(3)), 0.0);
  EXPECT_DOUBLE_EQ(frobenius_norm(Matrix::identity(4)), 2.0);
  EXPECT_DOUBLE_EQ(frobenius_norm(Matrix({{3.0, 4.0 * kI}})), 5.0);
}

TEST(Matrix, Powers) {
  std::mt19937_64 rng(5);
  const Matrix a = test::random_matrix(rng, 3, 3);
  EXPECT_EQ(matrix_power(a, 0), Matrix::identity(3));
  EXPECT_EQ(matrix_power(a, 1), a);
  EXPECT_TRUE(close(matrix_power(a, 3), a * a * a, 1e-14));
  EXPECT_EQ(matrix_power(test::jordan(2), 2), Matrix::zeros(2));
}

TEST(Matrix, BlocksRoundTrip) {
  std::mt19937_64 rng(6);
  const Matrix a = test::random_matrix(rng, 2, 2);
  const Matrix b = test::random_matrix(rng, 2, 3);
  const Matrix c = test::random_matrix(rng, 1, 2);
  const Matrix d = test::random_matrix(rng, 1, 3);
  const Matrix m = assemble_blocks(a, b, c, d);
  ASSERT_EQ(m.rows(), 3u);
  ASSERT_EQ(m.cols(), 5u);
  EXPECT_EQ(m.block(0, 2, 2, 3), b);
  EXPECT_EQ(m.block(2, 0, 1, 2), c);
  EXPECT_THROW(assemble_blocks(a, b, d, c), ShapeError);
  EXPECT_EQ(block_diagonal(a, d * transpose(d)).block(0, 2, 2, 1), Matrix::zeros(2, 1));
}

TEST(RankFactorize, ZeroMatrixHasEmptyFactors) {
  const RankFactorization f = rank_factorize(Matrix::zeros(3), 1e-10);
  EXPECT_EQ(f.rank, 0u);
  EXPECT_EQ(f.left.cols(), 0u);
  EXPECT_EQ(f.right.rows(), 0u);
  EXPECT_EQ(f.left * f.right, Matrix::zeros(3));
}

TEST(RankFactorize, IdentityHasFullRank) {
  EXPECT_EQ(rank_factorize(Matrix::identity(3)).rank, 3u);
}

TEST(RankFactorize, ReconstructsRankOne) {
  const Matrix a{{1.0, 2.0}, {2.0, 4.0}};
  const RankFactorization f = rank_factorize(a);
  EXPECT_EQ(f.rank, 1u);
  EXPECT_LE(frobenius_norm(a - f.left * f.right), 1e-12);
}

TEST(RankFactorize, ReconstructsThinProducts) {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 100; ++t) {
    std::uniform_int_distribution<std::size_t> dim(1, 8);
    const std::size_t n = dim(rng), m = dim(rng);
    const std::size_t r = std::uniform_int_distribution<std::size_t>(0, std::min(n, m))(rng);
    const Matrix a = test::random_matrix(rng, n, r) * test::random_matrix(rng, r, m);
    const double tol = 1e-10;
    const RankFactorization f = rank_factorize(a, tol);
    EXPECT_EQ(f.rank, r);
    EXPECT_EQ(f.tolerance_used, tol);
    EXPECT_LE(frobenius_norm(a - f.left * f.right), 10 * tol * std::max(frobenius_norm(a), 1e-300));
  }
}

TEST(RankFactorize, AbsoluteFloorDropsSmallPivots) {
  const Matrix a{{1e-12, 0.0}, {0.0, 0.0}};
  EXPECT_EQ(numerical_rank(a, 1e-10), 1u);
  EXPECT_EQ(numerical_rank(a, 1e-10, 1e-11), 0u);
}

TEST(Solve, Inverts) {
  EXPECT_EQ(invert(Matrix::identity(3)), Matrix::identity(3));
  EXPECT_TRUE(close(invert(Matrix::diagonal({2.0, 4.0})), Matrix::diagonal({0.5, 0.25}), 1e-15));
  EXPECT_THROW(invert(test::jordan(2)), SingularMatrixError);
}

TEST(Solve, ResidualIsSmallForWellConditionedSystems) {
  std::mt19937_64 rng(8);
  for (int t = 0; t < 50; ++t) {
    const std::size_t n = 1 + t % 8;
    const Matrix a = test::well_conditioned(rng, n);
    const Matrix b = test::random_matrix(rng, n, 2);
    const Matrix x = solve(a, b);
    EXPECT_LE(frobenius_norm(a * x - b), 1e-10 * frobenius_norm(a) * frobenius_norm(x));
  }
}

TEST(Matrix, EmptyShapesActAsZeros) {
  const Matrix left(3, 0);
  const Matrix right(0, 2);
  EXPECT_EQ(left * right, Matrix::zeros(3, 2));
  EXPECT_EQ(frobenius_norm(left), 0.0);
}

}  // namespace
}  // namespace ginv
