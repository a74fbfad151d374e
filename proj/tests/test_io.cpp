#include <gtest/gtest.h>

#include <cstring>
#include <sstream>

#include "haar_besov/experiments.hpp"
#include "haar_besov/io.hpp"

using namespace haar_besov;

TEST(Io, DenseJsonRoundTrip) {
    for (int d = 1; d <= 3; ++d) {
        const auto f = random_step(static_cast<std::uint64_t>(d), d, 2, Distribution::Normal);
        const auto g = io::dense_from_json(io::dense_to_json(f));
        EXPECT_EQ(g.dim(), d);
        EXPECT_EQ(g.level(), 2);
        EXPECT_EQ(max_abs_difference(f, g), 0.0);
    }
    EXPECT_THROW((void)io::dense_from_json(R"({"d":1,"m":1,"values":[1]})"), ParameterError);
    EXPECT_THROW((void)io::dense_from_json(R"({"d":1,"values":[1]})"), ParameterError);
    EXPECT_THROW((void)io::dense_from_json("{not json"), ParameterError);
}

TEST(Io, DenseBinaryRoundTrip) {
    const auto f = random_step(3, 2, 3);
    std::ostringstream os;
    io::write_dense_binary(os, f);
    const auto bytes = os.str();
    EXPECT_EQ(bytes.size(), 16U + 8U * 64U);
    EXPECT_EQ(bytes.substr(0, 4), "HBDS");
    // little-endian header fields
    EXPECT_EQ(static_cast<unsigned char>(bytes[4]), 1);
    EXPECT_EQ(static_cast<unsigned char>(bytes[8]), 2);
    EXPECT_EQ(static_cast<unsigned char>(bytes[12]), 3);
    std::istringstream is(bytes);
    const auto g = io::read_dense_binary(is);
    EXPECT_EQ(max_abs_difference(f, g), 0.0);

    std::istringstream truncated(bytes.substr(0, bytes.size() - 3));
    EXPECT_THROW((void)io::read_dense_binary(truncated), ParameterError);
    std::istringstream wrong("HBDX" + bytes.substr(4));
    EXPECT_THROW((void)io::read_dense_binary(wrong), ParameterError);
}

TEST(Io, SparseRoundTripWithDeepIndices) {
    const auto f = scattered(ScatteredSpec{7, 1, 0.5});  // levels up to 71
    const auto text = io::sparse_to_json(f);
    EXPECT_NE(text.find('"'), std::string::npos);
    const auto g = io::sparse_from_json(text);
    ASSERT_EQ(g.atoms().size(), f.atoms().size());
    for (std::size_t i = 0; i < f.atoms().size(); ++i) {
        EXPECT_TRUE(g.atoms()[i].cube == f.atoms()[i].cube);
        EXPECT_EQ(g.atoms()[i].coefficient.sign, f.atoms()[i].coefficient.sign);
        EXPECT_EQ(g.atoms()[i].coefficient.log2mag, f.atoms()[i].coefficient.log2mag);
    }
    const auto n = nested_family(NestedSpec{2, 3, NestedRule::Alternating, {}, {}});
    const auto n2 = io::sparse_from_json(io::sparse_to_json(n));
    EXPECT_EQ(max_abs_difference(densify(n, 3), densify(n2, 3)), 0.0);
    EXPECT_THROW((void)io::sparse_from_json(R"({"d":1,"atoms":[{"level":1,"index":[0],"sign":2,"log2mag":0}]})"),
                 ParameterError);
    EXPECT_THROW((void)io::sparse_from_json(R"({"d":1,"atoms":[{"level":1,"index":["x"],"sign":1,"log2mag":0}]})"),
                 ParameterError);
}

TEST(Io, CoefficientsRoundTrip) {
    for (int d = 1; d <= 2; ++d) {
        const auto c = analyze(random_step(9, d, 3));
        const auto c2 = io::coefficients_from_json(io::coefficients_to_json(c));
        ASSERT_EQ(c2.max_level(), c.max_level());
        for (int k = 0; k <= c.max_level(); ++k)
            for (std::size_t i = 0; i < c.level(k).size(); ++i) EXPECT_EQ(c.level(k)[i], c2.level(k)[i]);
    }
    EXPECT_THROW((void)io::coefficients_from_json(
                     R"({"d":1,"K":1,"levels":[{"k":1,"entries":[{"parent":[0],"pattern":2,"value":1}]}]})"),
                 ParameterError);
}

TEST(Io, TensorRoundTrip) {
    const auto t = tensor_analyze(random_step(10, 2, 3));
    const auto t2 = io::tensor_from_json(io::tensor_to_json(t));
    EXPECT_EQ(t2.level(), 3);
    ASSERT_EQ(t2.values().size(), t.values().size());
    for (std::size_t i = 0; i < t.values().size(); ++i) EXPECT_EQ(t.values()[i], t2.values()[i]);
}

TEST(Io, SpecsRoundTrip) {
    const NestedSpec n{2, 3, NestedRule::Explicit, {1, -2, 0.5, 3}, {}};
    const auto n2 = io::nested_spec_from_json(io::nested_spec_to_json(n));
    EXPECT_EQ(n2.d, 2);
    EXPECT_EQ(n2.m, 3);
    EXPECT_EQ(n2.rule, NestedRule::Explicit);
    EXPECT_EQ(n2.coefficients, n.coefficients);
    const auto s2 = io::scattered_spec_from_json(io::scattered_spec_to_json(ScatteredSpec{3, 2, 0.25}));
    EXPECT_EQ(s2.k, 3);
    EXPECT_EQ(s2.d, 2);
    EXPECT_EQ(s2.alpha, 0.25);
    EXPECT_THROW((void)io::nested_spec_from_json(R"({"family":"scattered","k":1,"d":1,"alpha":0.5})"),
                 ParameterError);
}

TEST(Io, DocumentDetection) {
    const auto f = random_step(11, 1, 2);
    EXPECT_TRUE(std::holds_alternative<DyadicStepFunction>(io::read_document(io::dense_to_json(f))));
    std::ostringstream os;
    io::write_dense_binary(os, f);
    EXPECT_TRUE(std::holds_alternative<DyadicStepFunction>(io::read_document(os.str())));
    EXPECT_TRUE(std::holds_alternative<SparseStepFunction>(io::read_document(io::sparse_to_json(spike(3, 1)))));
    EXPECT_TRUE(std::holds_alternative<HaarCoefficients>(io::read_document(io::coefficients_to_json(analyze(f)))));
    EXPECT_TRUE(
        std::holds_alternative<TensorHaarCoefficients>(io::read_document(io::tensor_to_json(tensor_analyze(f)))));
    EXPECT_THROW((void)io::read_document(R"({"hello":1})"), ParameterError);
    EXPECT_THROW((void)io::read_document("[1,2]"), ParameterError);
}
