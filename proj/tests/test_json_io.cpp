#include <gtest/gtest.h>

#include <hvms/hvms.hpp>
#include <hvms/json_io.hpp>

#include "support/generators.hpp"

using namespace hvms;
using namespace hvms::testing;
using hvms::json_io::Json;

namespace
{

bool same_bits(const Matrix& a, const Matrix& b)
{
    if (a.rows() != b.rows() || a.cols() != b.cols())
        return false;
    for (Eigen::Index j = 0; j < a.cols(); ++j)
        for (Eigen::Index i = 0; i < a.rows(); ++i)
            if (a(i, j) != b(i, j))
                return false;
    return true;
}

Json reparse(const Json& j) { return json_io::parse_text(json_io::dump(j)); }

} // namespace

TEST(JsonIo, HankelPairRoundTripIsExact)
{
    Rng rng(51);
    for (int k = 0; k < 5; ++k)
    {
        auto p = random_valid_case(rng).pair;
        p.tol.psd = 3e-9;
        const auto q = json_io::hankel_pair_from_json(reparse(json_io::to_json(p)));
        EXPECT_EQ(q.N, p.N);
        EXPECT_TRUE(same_bits(p.a1, q.a1));
        EXPECT_TRUE(same_bits(p.a2, q.a2));
        EXPECT_EQ(q.tol.psd, 3e-9);
    }
}

TEST(JsonIo, RealizationRoundTripIsExact)
{
    Rng rng(52);
    for (int k = 0; k < 5; ++k)
    {
        const auto r = realize(random_valid_case(rng).pair);
        const auto s = json_io::realization_from_json(reparse(json_io::to_json(r)));
        EXPECT_EQ(s.N, r.N);
        EXPECT_TRUE(same_bits(r.Y, s.Y));
        EXPECT_TRUE(same_bits(r.A, s.A));
        EXPECT_TRUE(same_bits(r.moments, s.moments));
        EXPECT_TRUE(same_bits(r.alpha, s.alpha));
    }
    const auto z = json_io::realization_from_json(reparse(json_io::to_json(Realization::zero(2))));
    EXPECT_EQ(z.dim(), 0);
    EXPECT_EQ(z.N, 2);
}

TEST(JsonIo, ExampleSpecAndMoments)
{
    const ExampleSpec s{{{0.5, -1.25, 0.1}, {1.0 / 3.0, 2.0, 0.7071067811865476}}};
    const auto t = json_io::example_spec_from_json(reparse(json_io::to_json(s)));
    ASSERT_EQ(t.terms.size(), 2u);
    EXPECT_EQ(t.terms[1].w, 1.0 / 3.0);
    EXPECT_EQ(t.terms[1].t, 0.7071067811865476);

    const auto m = json_io::moments1d_from_json(json_io::parse_text(R"({"rho": [0, 0, -1]})"));
    EXPECT_EQ(m.rho, (std::vector<double>{0.0, 0.0, -1.0}));
    EXPECT_THROW(json_io::moments1d_from_json(json_io::parse_text(R"({"rho": [0, 0]})")),
                 std::invalid_argument);
}

TEST(JsonIo, CoefficientTables)
{
    const auto rho = closed_form_residues(ExampleSpec{{{0.3, 0.7, 0.2}}});
    const auto j   = json_io::to_json(rho);
    EXPECT_TRUE(j.contains("[2,1]"));
    const auto back = json_io::coefficient_table_from_json(reparse(j), "residues");
    EXPECT_EQ(back.max_abs_difference(rho), 0.0);

    const auto wrapped = json_io::coefficient_table_from_json(
        json_io::parse_text(R"({"residues": {"[1,0]": -1, "[0,1]": -2}})"), "residues");
    EXPECT_EQ(wrapped.max_order(), 1);
    EXPECT_EQ(wrapped({0, 1}), -2.0);
    EXPECT_THROW(json_io::coefficient_table_from_json(json_io::parse_text(R"({"[0,0]": 1})"), "r"),
                 std::invalid_argument);
    EXPECT_THROW(json_io::coefficient_table_from_json(json_io::parse_text(R"({"x": 1})"), "r"),
                 std::invalid_argument);
}

TEST(JsonIo, RejectsMalformedDocuments)
{
    EXPECT_THROW(json_io::parse_text("{"), std::invalid_argument);
    const auto p = json_io::to_json(HankelPair::zero(1));

    auto bad_version = p;
    bad_version["schema_version"] = 99;
    EXPECT_THROW(json_io::hankel_pair_from_json(bad_version), std::invalid_argument);

    auto bad_order = p;
    bad_order["order"] = Json::array({Json::array({0, 1}), Json::array({1, 0})});
    EXPECT_THROW(json_io::hankel_pair_from_json(bad_order), std::invalid_argument);

    auto bad_shape = p;
    bad_shape["a1"] = Json::array({Json::array({1.0})});
    EXPECT_THROW(json_io::hankel_pair_from_json(bad_shape), std::invalid_argument);

    auto bad_tol = p;
    bad_tol["tol"] = Json{{"psdd", 1e-9}};
    EXPECT_THROW(json_io::hankel_pair_from_json(bad_tol), std::invalid_argument);

    auto no_version = p;
    no_version.erase("schema_version");
    EXPECT_NO_THROW(json_io::hankel_pair_from_json(no_version));
}

TEST(JsonIo, ComplexEntries)
{
    const auto j = json_io::parse_text(R"({"N": 1, "a1": [[1, [0, 1]], [[0, -1], 2]], "a2": [[0, 0], [0, 0]]})");
    const auto p = json_io::hankel_pair_from_json(j);
    EXPECT_EQ(p.a1(0, 1), Complex(0.0, 1.0));
    EXPECT_EQ(p.a1(1, 0), Complex(0.0, -1.0));
    EXPECT_EQ(p.a1(1, 1), Complex(2.0, 0.0));
}

TEST(JsonIo, ReportsCarryWitnesses)
{
    const auto v = hamburger_1d(Moments1D{{0.0, 0.0, -1.0}});
    const auto j = json_io::to_json(v);
    EXPECT_FALSE(j["passed"].get<bool>());
    EXPECT_EQ(j["conditions"][1]["witness"]["kind"], "kernel_vector");
}
