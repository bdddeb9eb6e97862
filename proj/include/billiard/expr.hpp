#pragma once

#include <cmath>
#include <map>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <type_traits>
#include <vector>

namespace billiard::expr {

struct ParseError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct PoleAtConfiguration : std::domain_error {
    using std::domain_error::domain_error;
};

enum class Op { Num, Var, Neg, Add, Sub, Mul, Div, Pow, Sqrt, Abs };

struct Node {
    Op op;
    std::string text;  // literal digits for Num, name for Var
    double value = 0;  // Num
    int slot = -1;     // Var
    int exponent = 0;  // Pow
    std::shared_ptr<const Node> lhs, rhs;
};

using NodePtr = std::shared_ptr<const Node>;
using MacroTable = std::map<std::string, NodePtr, std::less<>>;

class Expr {
public:
    Expr() = default;

    // Identifiers must name a slot or a macro; macros are inlined.
    static Expr parse(std::string_view src, const std::vector<std::string>& slots,
                      const MacroTable& macros = {});
    static NodePtr parse_node(std::string_view src, const std::vector<std::string>& slots,
                              const MacroTable& macros = {});

    const NodePtr& root() const { return root_; }
    const std::string& source() const { return source_; }
    const std::vector<std::string>& slots() const { return slots_; }
    std::string str() const;
    bool uses_slot(int slot) const;

    template <class T>
    T eval(std::span<const T> vals) const {
        return eval_node<T>(*root_, vals);
    }

    template <class T>
    static T eval_node(const Node& n, std::span<const T> vals);

private:
    NodePtr root_;
    std::string source_;
    std::vector<std::string> slots_;
};

std::string to_string(const Node& n);

template <class T>
T Expr::eval_node(const Node& n, std::span<const T> v) {
    using std::abs;
    using std::sqrt;
    switch (n.op) {
    case Op::Num:
        if constexpr (std::is_same_v<T, double>)
            return n.value;
        else
            return T(n.text.c_str());
    case Op::Var:
        return v[n.slot];
    case Op::Neg:
        return -eval_node<T>(*n.lhs, v);
    case Op::Add:
        return eval_node<T>(*n.lhs, v) + eval_node<T>(*n.rhs, v);
    case Op::Sub:
        return eval_node<T>(*n.lhs, v) - eval_node<T>(*n.rhs, v);
    case Op::Mul:
        return eval_node<T>(*n.lhs, v) * eval_node<T>(*n.rhs, v);
    case Op::Div: {
        T d = eval_node<T>(*n.rhs, v);
        if (d == 0) throw PoleAtConfiguration("division by zero");
        return eval_node<T>(*n.lhs, v) / d;
    }
    case Op::Pow: {
        T base = eval_node<T>(*n.lhs, v);
        int e = n.exponent;
        if (e < 0 && base == 0) throw PoleAtConfiguration("negative power of zero");
        T r = 1;
        T b = e < 0 ? T(1) / base : base;
        for (int k = e < 0 ? -e : e; k; k >>= 1) {
            if (k & 1) r *= b;
            b *= b;
        }
        return r;
    }
    case Op::Sqrt: {
        T x = eval_node<T>(*n.lhs, v);
        if (x < 0) throw std::domain_error("square root of a negative value");
        return sqrt(x);
    }
    case Op::Abs:
        return abs(eval_node<T>(*n.lhs, v));
    }
    throw std::logic_error("bad node");
}

}  // namespace billiard::expr
