#include "fmd/expr.hpp"

#include <cctype>
#include <sstream>
#include <unordered_set>

namespace fmd {

Expr::Expr(const CycScalar& c) {
    auto n = std::make_shared<Node>();
    n->op = Op::Const;
    n->c = c;
    n_ = n;
}

Expr Expr::var(int i) {
    auto n = std::make_shared<Node>();
    n->op = Op::Var;
    n->index = i;
    return Expr(std::shared_ptr<const Node>(n));
}

Expr Expr::make(Op op, Expr a, Expr b) {
    auto n = std::make_shared<Node>();
    n->op = op;
    n->a = a.n_;
    if (op != Op::Neg) n->b = b.n_;
    return Expr(std::shared_ptr<const Node>(n));
}

Expr operator+(const Expr& a, const Expr& b) {
    if (a.is_const() && b.is_const()) return Expr(a.constant() + b.constant());
    if (a.is_const() && a.constant().is_zero()) return b;
    if (b.is_const() && b.constant().is_zero()) return a;
    return Expr::make(Expr::Op::Add, a, b);
}

Expr operator-(const Expr& a, const Expr& b) {
    if (a.is_const() && b.is_const()) return Expr(a.constant() - b.constant());
    if (b.is_const() && b.constant().is_zero()) return a;
    if (a.is_const() && a.constant().is_zero()) return -b;
    return Expr::make(Expr::Op::Sub, a, b);
}

Expr operator*(const Expr& a, const Expr& b) {
    if (a.is_const() && b.is_const()) return Expr(a.constant() * b.constant());
    if (a.is_const() && a.constant().is_zero()) return a;
    if (b.is_const() && b.constant().is_zero()) return b;
    if (a.is_const() && a.constant().is_one()) return b;
    if (b.is_const() && b.constant().is_one()) return a;
    return Expr::make(Expr::Op::Mul, a, b);
}

Expr operator/(const Expr& a, const Expr& b) {
    if (b.is_const()) {
        if (b.constant().is_zero()) throw DomainError("division by zero constant");
        if (a.is_const()) return Expr(a.constant() / b.constant());
        if (b.constant().is_one()) return a;
    }
    return Expr::make(Expr::Op::Div, a, b);
}

Expr Expr::operator-() const {
    if (is_const()) return Expr(-constant());
    return make(Op::Neg, *this);
}

Expr Expr::pow(int e) const {
    if (e < 0) return Expr(1) / pow(-e);
    if (e == 0) return Expr(1);
    if (e == 1) return *this;
    if (is_const()) return Expr(constant().pow(e));
    auto n = std::make_shared<Node>();
    n->op = Op::Pow;
    n->a = n_;
    n->index = e;
    return Expr(std::shared_ptr<const Node>(n));
}

Expr Expr::substitute(const std::vector<Expr>& subs) const {
    std::unordered_map<const Node*, Expr> memo;
    std::function<Expr(const Node*)> go = [&](const Node* n) -> Expr {
        auto it = memo.find(n);
        if (it != memo.end()) return it->second;
        Expr r;
        switch (n->op) {
            case Op::Const: r = Expr(n->c); break;
            case Op::Var:
                if (n->index >= int(subs.size())) throw DomainError("substitution arity mismatch");
                r = subs[n->index];
                break;
            case Op::Add: r = go(n->a.get()) + go(n->b.get()); break;
            case Op::Sub: r = go(n->a.get()) - go(n->b.get()); break;
            case Op::Mul: r = go(n->a.get()) * go(n->b.get()); break;
            case Op::Div: r = go(n->a.get()) / go(n->b.get()); break;
            case Op::Neg: r = -go(n->a.get()); break;
            case Op::Pow: r = go(n->a.get()).pow(n->index); break;
        }
        memo.emplace(n, r);
        return r;
    };
    return go(n_.get());
}

Expr Expr::twisted(const GaloisElem& g) const {
    if (g.k == 0) return *this;
    std::unordered_map<const Node*, Expr> memo;
    std::function<Expr(const Node*)> go = [&](const Node* n) -> Expr {
        auto it = memo.find(n);
        if (it != memo.end()) return it->second;
        Expr r;
        switch (n->op) {
            case Op::Const: r = Expr(g(n->c)); break;
            case Op::Var: r = Expr::var(n->index); break;
            case Op::Add: r = go(n->a.get()) + go(n->b.get()); break;
            case Op::Sub: r = go(n->a.get()) - go(n->b.get()); break;
            case Op::Mul: r = go(n->a.get()) * go(n->b.get()); break;
            case Op::Div: r = go(n->a.get()) / go(n->b.get()); break;
            case Op::Neg: r = -go(n->a.get()); break;
            case Op::Pow: r = go(n->a.get()).pow(n->index); break;
        }
        memo.emplace(n, r);
        return r;
    };
    return go(n_.get());
}

size_t Expr::node_count() const {
    std::unordered_set<const Node*> seen;
    std::vector<const Node*> st{n_.get()};
    while (!st.empty()) {
        const Node* n = st.back();
        st.pop_back();
        if (!n || !seen.insert(n).second) continue;
        st.push_back(n->a.get());
        st.push_back(n->b.get());
    }
    return seen.size();
}

namespace {

int prec(Expr::Op op) {
    switch (op) {
        case Expr::Op::Add:
        case Expr::Op::Sub: return 1;
        case Expr::Op::Mul:
        case Expr::Op::Div: return 2;
        case Expr::Op::Neg: return 3;
        case Expr::Op::Pow: return 4;
        default: return 5;
    }
}

void emit(const Expr& e, const std::vector<std::string>& vars, std::ostream& os) {
    auto sub = [&](const Expr& c, int need) {
        int p = prec(c.op());
        if (c.is_const()) {
            std::string t = c.constant().to_text();
            if (t.find(' ') != std::string::npos || t[0] == '-') p = 0;
            else if (t.find_first_of("*/") != std::string::npos) p = 2;
            else p = 4;
        }
        if (p < need) os << "(";
        emit(c, vars, os);
        if (p < need) os << ")";
    };
    switch (e.op()) {
        case Expr::Op::Const: os << e.constant().to_text(); break;
        case Expr::Op::Var:
            if (e.index() >= int(vars.size())) throw DomainError("unnamed variable");
            os << vars[e.index()];
            break;
        case Expr::Op::Add:
            sub(e.lhs(), 1);
            os << " + ";
            sub(e.rhs(), 2);
            break;
        case Expr::Op::Sub:
            sub(e.lhs(), 1);
            os << " - ";
            sub(e.rhs(), 2);
            break;
        case Expr::Op::Mul:
            sub(e.lhs(), 2);
            os << "*";
            sub(e.rhs(), 3);
            break;
        case Expr::Op::Div:
            sub(e.lhs(), 2);
            os << "/";
            sub(e.rhs(), 3);
            break;
        case Expr::Op::Neg:
            os << "-";
            sub(e.lhs(), 3);
            break;
        case Expr::Op::Pow:
            sub(e.lhs(), 5);
            os << "^" << e.index();
            break;
    }
}

class Parser {
public:
    Parser(const std::string& s, const std::vector<std::string>& vars) : s_(s), vars_(vars) {}

    Expr run() {
        Expr e = sum();
        skip();
        if (i_ != s_.size()) fail("unexpected '" + std::string(1, s_[i_]) + "'");
        return e;
    }

private:
    [[noreturn]] void fail(const std::string& why) {
        throw ParseError("expression at offset " + std::to_string(i_) + ": " + why);
    }
    void skip() {
        while (i_ < s_.size() && std::isspace((unsigned char)s_[i_])) ++i_;
    }
    bool peek(char c) {
        skip();
        return i_ < s_.size() && s_[i_] == c;
    }
    bool starts_operand() {
        skip();
        if (i_ >= s_.size()) return false;
        char c = s_[i_];
        return std::isalnum((unsigned char)c) || c == '_' || c == '(';
    }
    Expr sum() {
        Expr e;
        if (peek('-')) {
            ++i_;
            e = -product();
        } else {
            if (peek('+')) ++i_;
            e = product();
        }
        while (true) {
            if (peek('+')) {
                ++i_;
                e = e + product();
            } else if (peek('-')) {
                ++i_;
                e = e - product();
            } else {
                return e;
            }
        }
    }
    Expr product() {
        Expr e = unary();
        while (true) {
            skip();
            if (peek('*') && !(i_ + 1 < s_.size() && s_[i_ + 1] == '*')) {
                ++i_;
                e = e * unary();
            } else if (peek('/')) {
                ++i_;
                e = e / unary();
            } else if (starts_operand()) {
                e = e * power();
            } else {
                return e;
            }
        }
    }
    Expr unary() {
        if (peek('-')) {
            ++i_;
            return -unary();
        }
        if (peek('+')) {
            ++i_;
            return unary();
        }
        return power();
    }
    Expr power() {
        Expr b = atom();
        skip();
        bool hat = false;
        if (peek('^')) {
            ++i_;
            hat = true;
        } else if (i_ + 1 < s_.size() && s_[i_] == '*' && s_[i_ + 1] == '*') {
            i_ += 2;
            hat = true;
        }
        if (!hat) return b;
        skip();
        bool paren = peek('(');
        if (paren) ++i_;
        skip();
        int sign = 1;
        if (peek('-')) {
            sign = -1;
            ++i_;
        }
        skip();
        size_t st = i_;
        while (i_ < s_.size() && std::isdigit((unsigned char)s_[i_])) ++i_;
        if (st == i_) fail("expected integer exponent");
        if (i_ - st > 5) fail("exponent too large");
        int e = sign * std::stoi(s_.substr(st, i_ - st));
        if (paren) {
            if (!peek(')')) fail("expected ')'");
            ++i_;
        }
        if (e > kMaxDegree || e < -kMaxDegree) fail("exponent too large");
        return b.pow(e);
    }
    Expr atom() {
        skip();
        if (i_ >= s_.size()) fail("unexpected end");
        char c = s_[i_];
        if (c == '(') {
            ++i_;
            Expr e = sum();
            if (!peek(')')) fail("expected ')'");
            ++i_;
            return e;
        }
        if (std::isdigit((unsigned char)c)) {
            size_t st = i_;
            while (i_ < s_.size() && std::isdigit((unsigned char)s_[i_])) ++i_;
            return Expr(CycScalar(mpq_class(mpz_class(s_.substr(st, i_ - st)))));
        }
        if (std::isalpha((unsigned char)c) || c == '_') {
            size_t st = i_;
            while (i_ < s_.size() && (std::isalnum((unsigned char)s_[i_]) || s_[i_] == '_')) ++i_;
            std::string id = s_.substr(st, i_ - st);
            for (size_t k = 0; k < vars_.size(); ++k)
                if (vars_[k] == id) return Expr::var(int(k));
            if (id == "r" || id == "rho") return Expr::rho(1);
            fail("unknown identifier '" + id + "'");
        }
        fail("unexpected '" + std::string(1, c) + "'");
    }

    const std::string& s_;
    const std::vector<std::string>& vars_;
    size_t i_ = 0;
};

}  // namespace

std::string Expr::to_text(const std::vector<std::string>& vars) const {
    std::ostringstream os;
    emit(*this, vars, os);
    return os.str();
}

Expr Expr::parse(const std::string& text, const std::vector<std::string>& vars) { return Parser(text, vars).run(); }

std::complex<double> Expr::eval(const std::vector<std::complex<double>>& pt, int embedding) const {
    std::unordered_map<const Node*, std::complex<double>> memo;
    std::function<std::complex<double>(const Node*)> go = [&](const Node* n) -> std::complex<double> {
        auto it = memo.find(n);
        if (it != memo.end()) return it->second;
        std::complex<double> r;
        switch (n->op) {
            case Op::Const: r = n->c.embed(embedding); break;
            case Op::Var:
                if (n->index >= int(pt.size())) throw DomainError("unbound variable");
                r = pt[n->index];
                break;
            case Op::Add: r = go(n->a.get()) + go(n->b.get()); break;
            case Op::Sub: r = go(n->a.get()) - go(n->b.get()); break;
            case Op::Mul: r = go(n->a.get()) * go(n->b.get()); break;
            case Op::Div: r = go(n->a.get()) / go(n->b.get()); break;
            case Op::Neg: r = -go(n->a.get()); break;
            case Op::Pow: r = std::pow(go(n->a.get()), n->index); break;
        }
        memo.emplace(n, r);
        return r;
    };
    return go(n_.get());
}

MultiPoly expand(const Expr& e, const std::vector<std::string>& vars) {
    std::vector<MultiPoly> vs;
    for (size_t i = 0; i < vars.size(); ++i) vs.push_back(MultiPoly::variable(vars, int(i)));
    return e.fold<MultiPoly>(vs, [&](const CycScalar& c) { return MultiPoly::constant(vars, c); });
}

Expr to_expr(const MultiPoly& p) {
    Expr acc(0);
    for (auto& [e, c] : p.terms()) {
        Expr t(c);
        for (size_t i = 0; i < e.size(); ++i)
            if (e[i] > 0) t = t * Expr::var(int(i)).pow(e[i]);
        acc = acc + t;
    }
    return acc;
}

}  // namespace fmd
