#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "test_util.hpp"
#include "tucker/adversarial.hpp"
#include "tucker/tensor.hpp"

namespace tucker {
namespace {

TEST(TensorFromFlat, IdentityPattern) {
  const Tensor t = tensor_from_flat<double>({2, 2}, {1, 0, 0, 1});
  EXPECT_EQ(t.order(), 2);
  EXPECT_EQ(t({0, 0}), 1.0);
  EXPECT_EQ(t({0, 1}), 0.0);
  EXPECT_EQ(t({1, 0}), 0.0);
  EXPECT_EQ(t({1, 1}), 1.0);
}

TEST(TensorFromFlat, OrderOne) {
  const Tensor t = tensor_from_flat<double>({4}, {1, 2, 3, 4});
  EXPECT_EQ(frobenius_norm_sq(t), 30.0);
}

TEST(TensorFromFlat, LexicographicLayout) {
  std::vector<double> values(24);
  for (std::size_t i = 0; i < values.size(); ++i) values[i] = static_cast<double>(i);
  const Tensor t = tensor_from_flat<double>({2, 3, 4}, std::span<const double>(values));
  EXPECT_EQ(t({1, 2, 3}), 1 * 12 + 2 * 4 + 3);
  EXPECT_EQ(t({0, 1, 0}), 4);
}

TEST(TensorFromFlat, SimpleConstructionOrderThreeSlices) {
  const double s = std::sqrt(1.1);
  // Slices X_{1::}, X_{2::}, X_{3::} laid out one after the other.
  const std::vector<double> values = {s, 0, 0, 0, 0, 0, 0, 0, 0,   //
                                      0, 0, 0, 0, 0, 0, 0, 0, 1,   //
                                      0, 0, 0, 0, 0, 1, 0, 1, 0};
  const Tensor t = tensor_from_flat<double>({3, 3, 3}, std::span<const double>(values));
  EXPECT_TRUE(t == simple_construction(3, 0.1).tensor);
}

TEST(TensorFromFlat, RejectsBadInput) {
  EXPECT_THROW(tensor_from_flat<double>({2, 2}, {1, 2, 3}), Error);
  EXPECT_THROW(tensor_from_flat<double>({2}, {1, NAN}), Error);
  EXPECT_THROW(tensor_from_flat<double>({2}, {1, INFINITY}), Error);
  EXPECT_THROW(tensor_from_flat<double>({0}, std::initializer_list<double>{}), Error);
  try {
    tensor_from_flat<double>({3}, {1, 2});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Construction);
  }
}

TEST(Unfold, OrderTwoIsTheMatrix) {
  const Tensor t = tensor_from_flat<double>({2, 3}, {1, 2, 3, 4, 5, 6});
  MatrixXr expected(2, 3);
  expected << 1, 2, 3, 4, 5, 6;
  EXPECT_EQ(unfold(t, 0), expected);
  EXPECT_EQ(unfold(t, 1), expected.transpose().eval());
}

TEST(Unfold, ColumnsAreLexicographicOverRemainingModes) {
  std::mt19937_64 rng(7);
  const Tensor t = testing_util::random_tensor({2, 3, 2}, rng);
  const MatrixXr m = unfold(t, 1);
  ASSERT_EQ(m.rows(), 3);
  ASSERT_EQ(m.cols(), 4);
  for (Index i = 0; i < 2; ++i)
    for (Index j = 0; j < 3; ++j)
      for (Index k = 0; k < 2; ++k) EXPECT_EQ(m(j, i * 2 + k), t({i, j, k}));
}

TEST(Unfold, SimpleConstructionGram) {
  const auto inst = simple_construction(3, 0.1);
  const MatrixXr x1 = unfold(inst.tensor, 0);
  const MatrixXr gram = x1 * x1.transpose();
  MatrixXr expected = MatrixXr::Zero(3, 3);
  expected.diagonal() << 1.1, 1, 2;
  EXPECT_EQ(gram, expected);
}

TEST(Unfold, RoundTripIsBitExact) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const Tensor t = testing_util::random_tensor(testing_util::random_shape(rng, 1, 5, 1, 4), rng);
    for (Index n = 0; n < t.order(); ++n) EXPECT_TRUE(fold(unfold(t, n), n, t.shape()) == t);
  }
}

TEST(Unfold, ModeOutOfRange) {
  const Tensor t = Tensor::zeros({2, 2});
  try {
    unfold(t, 2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Mode);
  }
  EXPECT_THROW(unfold(t, -1), Error);
}

TEST(Fold, ScalarAndZero) {
  MatrixXr one(1, 1);
  one << 2.5;
  const Tensor scalar = fold(one, 0, {1, 1});
  EXPECT_EQ(scalar({0, 0}), 2.5);

  const Tensor z = fold(MatrixXr(MatrixXr::Zero(3, 9)), 0, {3, 3, 3});
  EXPECT_TRUE(z.is_zero());
  EXPECT_EQ(z.shape(), (Shape{3, 3, 3}));
}

TEST(Fold, DimensionMismatch) {
  try {
    fold(MatrixXr(MatrixXr::Zero(3, 8)), 0, {3, 3, 3});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Shape);
  }
}

// Elementwise definition: (X x_n U)_{..j..} = sum_i x_{..i..} u_{j i}.
Tensor mode_product_by_definition(const Tensor& t, const MatrixXr& u, Index mode) {
  Shape shape = t.shape();
  shape[static_cast<std::size_t>(mode)] = u.rows();
  Vector<double> data = Vector<double>::Zero(num_elements(shape));
  const Tensor layout = Tensor::zeros(shape);
  std::vector<Index> idx(shape.size());
  for (Index flat = 0; flat < layout.size(); ++flat) {
    layout.multi_index(flat, idx);
    const Index j = idx[static_cast<std::size_t>(mode)];
    double sum = 0;
    for (Index i = 0; i < t.extent(mode); ++i) {
      idx[static_cast<std::size_t>(mode)] = i;
      sum += t(std::span<const Index>(idx)) * u(j, i);
    }
    data[flat] = sum;
  }
  return Tensor(shape, data);
}

TEST(ModeNProduct, IdentityLeavesTensorUnchanged) {
  std::mt19937_64 rng(3);
  const Tensor t = testing_util::random_tensor({3, 2, 4}, rng);
  for (Index n = 0; n < 3; ++n) EXPECT_TRUE(mode_n_product(t, MatrixXr::Identity(t.extent(n), t.extent(n)), n) == t);
}

TEST(ModeNProduct, BottomComponentSurvivesProjector) {
  const auto inst = simple_construction(3, 0.1);
  MatrixXr m = MatrixXr::Zero(3, 3);
  m.diagonal() << 0, 1, 1;
  for (Index n = 0; n < 3; ++n) EXPECT_TRUE(mode_n_product(inst.bottom, m, n) == inst.bottom);
}

TEST(ModeNProduct, MatchesElementwiseDefinition) {
  const Tensor t = tensor_from_flat<double>({2, 2, 2}, {1, 2, 3, 4, 5, 6, 7, 8});
  MatrixXr u(2, 2);
  u << 1, 1, 0, 0;
  const Tensor got = mode_n_product(t, u, 0);
  const Tensor want = mode_product_by_definition(t, u, 0);
  EXPECT_TRUE(got == want);
  // Row 0 of u sums the two mode-0 slices; row 1 zeroes them.
  EXPECT_EQ(got({0, 0, 0}), 6);
  EXPECT_EQ(got({0, 1, 1}), 12);
  EXPECT_EQ(got({1, 1, 1}), 0);

  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const Tensor r = testing_util::random_tensor(testing_util::random_shape(rng, 2, 4, 1, 4), rng);
    const Index mode = std::uniform_int_distribution<Index>(0, r.order() - 1)(rng);
    const MatrixXr v = testing_util::random_matrix(3, r.extent(mode), rng);
    EXPECT_LE(testing_util::max_abs_diff(mode_n_product(r, v, mode), mode_product_by_definition(r, v, mode)), 1e-13);
  }
}

TEST(ModeNProduct, DimensionError) {
  const Tensor t = Tensor::zeros({2, 3});
  try {
    mode_n_product(t, MatrixXr::Identity(2, 2), 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Dimension);
  }
}

TEST(ModeNProductProperties, UnfoldingConsistency) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 50; ++trial) {
    const Tensor t = testing_util::random_tensor(testing_util::random_shape(rng, 2, 4, 1, 4), rng);
    const Index mode = std::uniform_int_distribution<Index>(0, t.order() - 1)(rng);
    const MatrixXr u = testing_util::random_matrix(std::uniform_int_distribution<Index>(1, 5)(rng), t.extent(mode), rng);
    const MatrixXr lhs = unfold(mode_n_product(t, u, mode), mode);
    const MatrixXr rhs = u * unfold(t, mode);
    EXPECT_LE((lhs - rhs).norm(), 1e-13 * std::max(1.0, rhs.norm()));
  }
}

TEST(ModeNProductProperties, DistinctModesCommute) {
  std::mt19937_64 rng(22);
  for (int trial = 0; trial < 50; ++trial) {
    const Tensor t = testing_util::random_tensor(testing_util::random_shape(rng, 2, 4, 1, 4), rng);
    std::uniform_int_distribution<Index> pick(0, t.order() - 1);
    const Index m = pick(rng);
    Index n = pick(rng);
    if (n == m) n = (m + 1) % t.order();
    const MatrixXr a = testing_util::random_matrix(2, t.extent(m), rng);
    const MatrixXr b = testing_util::random_matrix(3, t.extent(n), rng);
    const Tensor lhs = mode_n_product(mode_n_product(t, a, m), b, n);
    const Tensor rhs = mode_n_product(mode_n_product(t, b, n), a, m);
    EXPECT_LE(std::sqrt(frobenius_norm_sq(lhs - rhs)), 1e-12 * std::max(1.0, std::sqrt(frobenius_norm_sq(rhs))));
  }
}

TEST(ModeNProductProperties, SameModeComposes) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 50; ++trial) {
    const Tensor t = testing_util::random_tensor(testing_util::random_shape(rng, 2, 4, 1, 4), rng);
    const Index n = std::uniform_int_distribution<Index>(0, t.order() - 1)(rng);
    const MatrixXr a = testing_util::random_matrix(3, t.extent(n), rng);
    const MatrixXr b = testing_util::random_matrix(2, 3, rng);
    const Tensor lhs = mode_n_product(mode_n_product(t, a, n), b, n);
    const Tensor rhs = mode_n_product(t, MatrixXr(b * a), n);
    EXPECT_LE(std::sqrt(frobenius_norm_sq(lhs - rhs)), 1e-12 * std::max(1.0, std::sqrt(frobenius_norm_sq(rhs))));
  }
}

TEST(InnerProduct, Definitions) {
  std::mt19937_64 rng(4);
  const Tensor a = testing_util::random_tensor({2, 3, 2}, rng);
  const Tensor b = testing_util::random_tensor({2, 3, 2}, rng);
  EXPECT_EQ(inner_product(a, a), frobenius_norm_sq(a));
  EXPECT_EQ(inner_product(a, b), inner_product(b, a));

  double loop = 0;
  for (Index i = 0; i < a.size(); ++i) loop += a.data()[i] * b.data()[i];
  EXPECT_NEAR(inner_product(a, b), loop, 1e-14);
}

TEST(InnerProduct, SimpleConstruction) {
  for (int n = 2; n <= 6; ++n) {
    const auto inst = simple_construction(n, 0.1);
    EXPECT_EQ(inner_product(inst.top, inst.bottom), 0.0);
    EXPECT_NEAR(inner_product(inst.tensor, inst.tensor), 1.1 + n, 1e-14);
  }
}

TEST(InnerProduct, ShapeMismatch) {
  try {
    inner_product(Tensor::zeros({2, 3}), Tensor::zeros({3, 2}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Shape);
  }
}

TEST(FrobeniusNorm, Values) {
  EXPECT_EQ(frobenius_norm_sq(Tensor::zeros({3, 3})), 0.0);
  for (int n = 2; n <= 6; ++n) EXPECT_EQ(frobenius_norm_sq(simple_construction(n, 0.1).bottom), n);
  EXPECT_NEAR(frobenius_norm_sq(*advanced_construction(3, 0.1).middle), 3.3, 1e-14);
}

TEST(IsSymmetric, Constructions) {
  for (int n = 2; n <= 6; ++n) {
    for (double eps : {0.5, 0.1, 0.01}) EXPECT_TRUE(is_symmetric(simple_construction(n, eps).tensor, 0.0));
  }
  for (int n = 3; n <= 5; ++n) {
    for (double eps : {0.5, 0.1, 0.01}) EXPECT_TRUE(is_symmetric(advanced_construction(n, eps).tensor, 0.0));
  }
}

TEST(IsSymmetric, NonCubicalAndAsymmetric) {
  EXPECT_FALSE(is_symmetric(Tensor::zeros({2, 3}), 1.0));
  const Tensor t = tensor_from_flat<double>({2, 2}, {1, 2, 3, 4});
  EXPECT_FALSE(is_symmetric(t, 0.5));
  EXPECT_TRUE(is_symmetric(t, 1.0));
}

TEST(IsSymmetric, HighOrderUsesTranspositions) {
  // Order 9 takes the adjacent-transposition path.
  std::vector<double> values(512, 0.0);
  values[1] = 1.0;  // index (0,...,0,1)
  Tensor asym = tensor_from_flat<double>(Shape(9, 2), std::span<const double>(values));
  EXPECT_FALSE(is_symmetric(asym, 0.0));
  values[256] = 1.0;
  values[128] = 1.0;
  values[64] = 1.0;
  values[32] = 1.0;
  values[16] = 1.0;
  values[8] = 1.0;
  values[4] = 1.0;
  values[2] = 1.0;
  Tensor sym = tensor_from_flat<double>(Shape(9, 2), std::span<const double>(values));
  EXPECT_TRUE(is_symmetric(sym, 0.0));
}

TEST(SymmetricUnfoldings, IdenticalAcrossModes) {
  for (int n = 2; n <= 6; ++n) {
    const auto inst = simple_construction(n, 0.1);
    const MatrixXr first = unfold(inst.tensor, 0);
    for (Index m = 1; m < n; ++m) EXPECT_EQ(unfold(inst.tensor, m), first);
  }
  for (int n = 3; n <= 5; ++n) {
    const auto inst = advanced_construction(n, 0.1);
    const MatrixXr first = unfold(inst.tensor, 0);
    for (Index m = 1; m < n; ++m) EXPECT_EQ(unfold(inst.tensor, m), first);
  }
}

}  // namespace
}  // namespace tucker
