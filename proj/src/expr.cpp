#include "billiard/expr.hpp"

#include <cctype>
#include <charconv>
#include <functional>

namespace billiard::expr {

namespace {

NodePtr make(Op op, NodePtr l = nullptr, NodePtr r = nullptr) {
    auto n = std::make_shared<Node>();
    n->op = op;
    n->lhs = std::move(l);
    n->rhs = std::move(r);
    return n;
}

class Parser {
public:
    Parser(std::string_view s, const std::vector<std::string>& slots, const MacroTable& macros)
        : s_(s), slots_(slots), macros_(macros) {}

    NodePtr run() {
        NodePtr n = sum();
        skip();
        if (pos_ != s_.size()) fail("unexpected trailing input");
        return n;
    }

private:
    std::string_view s_;
    const std::vector<std::string>& slots_;
    const MacroTable& macros_;
    size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& why) const {
        throw ParseError(why + " at offset " + std::to_string(pos_) + " in '" + std::string(s_) + "'");
    }

    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool eat(char c) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    NodePtr sum() {
        NodePtr n = product();
        for (;;) {
            if (eat('+'))
                n = make(Op::Add, n, product());
            else if (eat('-'))
                n = make(Op::Sub, n, product());
            else
                return n;
        }
    }

    NodePtr product() {
        NodePtr n = unary();
        for (;;) {
            if (eat('*'))
                n = make(Op::Mul, n, unary());
            else if (eat('/'))
                n = make(Op::Div, n, unary());
            else
                return n;
        }
    }

    NodePtr unary() {
        if (eat('-')) return make(Op::Neg, unary());
        if (eat('+')) return unary();
        return power();
    }

    NodePtr power() {
        NodePtr base = primary();
        if (!eat('^')) return base;
        bool paren = eat('(');
        bool neg = false;
        if (eat('-'))
            neg = true;
        else
            eat('+');
        skip();
        size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (start == pos_) fail("integer exponent expected");
        int e = 0;
        std::from_chars(s_.data() + start, s_.data() + pos_, e);
        if (paren && !eat(')')) fail("')' expected");
        auto n = std::make_shared<Node>();
        n->op = Op::Pow;
        n->exponent = neg ? -e : e;
        n->lhs = base;
        return n;
    }

    NodePtr primary() {
        skip();
        if (pos_ >= s_.size()) fail("unexpected end of input");
        char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            NodePtr n = sum();
            if (!eat(')')) fail("')' expected");
            return n;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return identifier();
        fail(std::string("unexpected character '") + c + "'");
    }

    NodePtr number() {
        size_t start = pos_;
        while (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.')) ++pos_;
        if (pos_ < s_.size() && (s_[pos_] == 'e' || s_[pos_] == 'E')) {
            size_t save = pos_++;
            if (pos_ < s_.size() && (s_[pos_] == '+' || s_[pos_] == '-')) ++pos_;
            if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
                while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            } else {
                pos_ = save;
            }
        }
        auto n = std::make_shared<Node>();
        n->op = Op::Num;
        n->text = std::string(s_.substr(start, pos_ - start));
        try {
            n->value = std::stod(n->text);
        } catch (const std::exception&) {
            fail("bad number '" + n->text + "'");
        }
        return n;
    }

    NodePtr identifier() {
        size_t start = pos_;
        while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
        std::string name(s_.substr(start, pos_ - start));
        if (name == "sqrt" || name == "abs") {
            if (!eat('(')) fail("'(' expected after " + name);
            NodePtr arg = sum();
            if (!eat(')')) fail("')' expected");
            return make(name == "sqrt" ? Op::Sqrt : Op::Abs, arg);
        }
        for (size_t i = 0; i < slots_.size(); ++i) {
            if (slots_[i] == name) {
                auto n = std::make_shared<Node>();
                n->op = Op::Var;
                n->text = name;
                n->slot = static_cast<int>(i);
                return n;
            }
        }
        if (auto it = macros_.find(name); it != macros_.end()) return it->second;
        fail("unknown identifier '" + name + "'");
    }
};

int precedence(Op op) {
    switch (op) {
    case Op::Add:
    case Op::Sub:
        return 1;
    case Op::Mul:
    case Op::Div:
        return 2;
    case Op::Neg:
        return 3;
    case Op::Pow:
        return 4;
    default:
        return 5;
    }
}

std::string wrap(const Node& n, int min_prec) {
    std::string s = to_string(n);
    return precedence(n.op) < min_prec ? "(" + s + ")" : s;
}

}  // namespace

NodePtr Expr::parse_node(std::string_view src, const std::vector<std::string>& slots, const MacroTable& macros) {
    return Parser(src, slots, macros).run();
}

Expr Expr::parse(std::string_view src, const std::vector<std::string>& slots, const MacroTable& macros) {
    Expr e;
    e.root_ = parse_node(src, slots, macros);
    e.source_ = std::string(src);
    e.slots_ = slots;
    return e;
}

std::string to_string(const Node& n) {
    switch (n.op) {
    case Op::Num:
    case Op::Var:
        return n.text;
    case Op::Neg:
        return "-" + wrap(*n.lhs, 3);
    case Op::Add:
        return wrap(*n.lhs, 1) + "+" + wrap(*n.rhs, 2);
    case Op::Sub:
        return wrap(*n.lhs, 1) + "-" + wrap(*n.rhs, 2);
    case Op::Mul:
        return wrap(*n.lhs, 2) + "*" + wrap(*n.rhs, 3);
    case Op::Div:
        return wrap(*n.lhs, 2) + "/" + wrap(*n.rhs, 3);
    case Op::Pow:
        return wrap(*n.lhs, 5) + "^" + (n.exponent < 0 ? "(" + std::to_string(n.exponent) + ")" : std::to_string(n.exponent));
    case Op::Sqrt:
        return "sqrt(" + to_string(*n.lhs) + ")";
    case Op::Abs:
        return "abs(" + to_string(*n.lhs) + ")";
    }
    return {};
}

std::string Expr::str() const { return root_ ? to_string(*root_) : std::string(); }

bool Expr::uses_slot(int slot) const {
    std::function<bool(const Node*)> walk = [&](const Node* n) -> bool {
        if (!n) return false;
        if (n->op == Op::Var && n->slot == slot) return true;
        return walk(n->lhs.get()) || walk(n->rhs.get());
    };
    return walk(root_.get());
}

}  // namespace billiard::expr
