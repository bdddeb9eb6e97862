#include <gtest/gtest.h>

#include <array>
#include <cmath>

#include "billiard/core.hpp"
#include "billiard/expr.hpp"

using billiard::hp_float;
using billiard::expr::Expr;
using billiard::expr::MacroTable;
using billiard::expr::ParseError;
using billiard::expr::PoleAtConfiguration;

namespace {
const std::vector<std::string> kSlots{"s1", "s2", "s3", "A"};

double ev(const std::string& src, std::array<double, 4> v, const MacroTable& m = {}) {
    return Expr::parse(src, kSlots, m).eval<double>(std::span<const double>(v));
}
}  // namespace

TEST(Expr, Precedence) {
    EXPECT_DOUBLE_EQ(ev("1+2*3", {}), 7);
    EXPECT_DOUBLE_EQ(ev("(1+2)*3", {}), 9);
    EXPECT_DOUBLE_EQ(ev("2^3", {}), 8);
    EXPECT_DOUBLE_EQ(ev("-2^2", {}), -4);
    EXPECT_DOUBLE_EQ(ev("s1-s2-s3", {10, 3, 2, 0}), 5);
    EXPECT_DOUBLE_EQ(ev("s1/s2/s3", {12, 3, 2, 0}), 2);
    EXPECT_DOUBLE_EQ(ev("s1^-2", {2, 0, 0, 0}), 0.25);
}

TEST(Expr, Functions) {
    EXPECT_DOUBLE_EQ(ev("sqrt(s1)", {9, 0, 0, 0}), 3);
    EXPECT_DOUBLE_EQ(ev("abs(s1-s2)", {1, 4, 0, 0}), 3);
    EXPECT_THROW(ev("sqrt(s1)", {-1, 0, 0, 0}), std::domain_error);
}

TEST(Expr, Poles) {
    EXPECT_THROW(ev("1/(s2-s3)", {3, 4, 4, 0}), PoleAtConfiguration);
    EXPECT_THROW(ev("(s2-s3)^-1", {3, 4, 4, 0}), PoleAtConfiguration);
}

TEST(Expr, Macros) {
    MacroTable m;
    m["cA"] = Expr::parse_node("(s2^2+s3^2-s1^2)/(2*s2*s3)", kSlots);
    EXPECT_NEAR(ev("cA", {5, 4, 3, 0}, m), 0.0, 1e-15);
    EXPECT_NEAR(ev("cA", {3, 4, 5, 0}, m), 0.8, 1e-15);
}

TEST(Expr, Errors) {
    EXPECT_THROW(Expr::parse("s1+", kSlots), ParseError);
    EXPECT_THROW(Expr::parse("foo", kSlots), ParseError);
    EXPECT_THROW(Expr::parse("(s1", kSlots), ParseError);
    EXPECT_THROW(Expr::parse("s1 s2", kSlots), ParseError);
    EXPECT_THROW(Expr::parse("s1^1.5", kSlots), ParseError);
}

TEST(Expr, PrintRoundTrip) {
    for (const char* src : {"1/(s1*(s2^2+s3^2-s1^2))", "s2*s3/(s2+s3-s1)", "-s1^2+sqrt(A)/3", "(s1-s2)^-2"}) {
        Expr e = Expr::parse(src, kSlots);
        Expr f = Expr::parse(e.str(), kSlots);
        EXPECT_EQ(e.str(), f.str()) << src;
        std::array<double, 4> v{3.1, 4.3, 5.7, 2.2};
        EXPECT_DOUBLE_EQ(e.eval<double>(std::span<const double>(v)), f.eval<double>(std::span<const double>(v)));
    }
}

TEST(Expr, HighPrecisionLiterals) {
    Expr e = Expr::parse("1/3+0.1", kSlots);
    std::array<hp_float, 4> v{};
    hp_float r = e.eval<hp_float>(std::span<const hp_float>(v));
    hp_float want = hp_float(1) / 3 + hp_float("0.1");
    EXPECT_LT(abs(r - want), hp_float("1e-48"));
}
