#pragma once

#include <functional>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "fmd/multipoly.hpp"

namespace fmd {

// Shared expression DAG over numbered variables.
class Expr {
public:
    enum class Op { Const, Var, Add, Sub, Mul, Div, Neg, Pow };
    struct Node {
        Op op;
        CycScalar c;
        int index = 0;  // variable index or exponent
        std::shared_ptr<const Node> a, b;
    };

    Expr() : Expr(CycScalar()) {}
    Expr(const CycScalar& c);
    Expr(long c) : Expr(CycScalar(c)) {}
    static Expr var(int i);
    static Expr rho(int k = 1) { return Expr(CycScalar::rho(k)); }

    Op op() const { return n_->op; }
    const Node* node() const { return n_.get(); }
    const CycScalar& constant() const { return n_->c; }
    int index() const { return n_->index; }
    Expr lhs() const { return Expr(n_->a); }
    Expr rhs() const { return Expr(n_->b); }
    bool is_const() const { return n_->op == Op::Const; }

    friend Expr operator+(const Expr& a, const Expr& b);
    friend Expr operator-(const Expr& a, const Expr& b);
    friend Expr operator*(const Expr& a, const Expr& b);
    friend Expr operator/(const Expr& a, const Expr& b);
    Expr operator-() const;
    Expr pow(int e) const;

    // Replace variable i by subs[i]; memoized over shared nodes.
    Expr substitute(const std::vector<Expr>& subs) const;
    Expr twisted(const GaloisElem& g) const;
    size_t node_count() const;

    std::string to_text(const std::vector<std::string>& vars) const;
    static Expr parse(const std::string& text, const std::vector<std::string>& vars);

    // Memoized fold into any field-like algebra A.
    template <class A>
    A fold(const std::vector<A>& vars, const std::function<A(const CycScalar&)>& lift) const {
        return fold_all<A>({*this}, vars, lift)[0];
    }
    // One memo shared by all roots.
    template <class A>
    static std::vector<A> fold_all(const std::vector<Expr>& roots, const std::vector<A>& vars,
                                   const std::function<A(const CycScalar&)>& lift);

    std::complex<double> eval(const std::vector<std::complex<double>>& pt, int embedding = 1) const;

private:
    explicit Expr(std::shared_ptr<const Node> n) : n_(std::move(n)) {}
    static Expr make(Op op, Expr a, Expr b = Expr());
    std::shared_ptr<const Node> n_;
};

template <class A>
std::vector<A> Expr::fold_all(const std::vector<Expr>& roots, const std::vector<A>& vars,
                              const std::function<A(const CycScalar&)>& lift) {
    std::unordered_map<const Node*, A> memo;
    std::function<A(const Node*)> go = [&](const Node* n) -> A {
        auto it = memo.find(n);
        if (it != memo.end()) return it->second;
        A r;
        switch (n->op) {
            case Op::Const: r = lift(n->c); break;
            case Op::Var:
                if (n->index < 0 || n->index >= int(vars.size())) throw DomainError("unbound variable");
                r = vars[n->index];
                break;
            case Op::Add: r = go(n->a.get()) + go(n->b.get()); break;
            case Op::Sub: r = go(n->a.get()) - go(n->b.get()); break;
            case Op::Mul: r = go(n->a.get()) * go(n->b.get()); break;
            case Op::Div: r = go(n->a.get()) / go(n->b.get()); break;
            case Op::Neg: r = -go(n->a.get()); break;
            case Op::Pow: {
                A base = go(n->a.get());
                A acc = lift(CycScalar(1));
                for (int e = n->index; e > 0; e >>= 1) {
                    if (e & 1) acc = acc * base;
                    if (e > 1) base = base * base;
                }
                r = acc;
                break;
            }
        }
        memo.emplace(n, r);
        return r;
    };
    std::vector<A> out;
    for (auto& e : roots) out.push_back(go(e.n_.get()));
    return out;
}

// Polynomial expansion; division is only allowed by constants.
MultiPoly expand(const Expr& e, const std::vector<std::string>& vars);
Expr to_expr(const MultiPoly& p);

}  // namespace fmd
