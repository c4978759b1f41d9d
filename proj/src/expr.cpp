#include "alg/expr.hpp"

#include <algorithm>
#include <cctype>

#include "alg/chart.hpp"

namespace alg {

struct Expr::Node {
    Kind kind;
    ComplexRational value;
    std::string name;
    std::vector<Expr> children;
    long exponent = 0;
    Func func = Func::Sin;
};

Expr Expr::constant(const ComplexRational& c) {
    return Expr(std::make_shared<const Node>(Node{Kind::Const, c, {}, {}, 0, Func::Sin}));
}

Expr Expr::symbol(std::string name) {
    return Expr(std::make_shared<const Node>(Node{Kind::Symbol, {}, std::move(name), {}, 0, Func::Sin}));
}

Expr Expr::add(std::vector<Expr> terms) {
    if (terms.size() == 1) return terms.front();
    return Expr(std::make_shared<const Node>(Node{Kind::Add, {}, {}, std::move(terms), 0, Func::Sin}));
}

Expr Expr::mul(std::vector<Expr> factors) {
    if (factors.size() == 1) return factors.front();
    return Expr(std::make_shared<const Node>(Node{Kind::Mul, {}, {}, std::move(factors), 0, Func::Sin}));
}

Expr Expr::div(Expr num, Expr den) {
    return Expr(std::make_shared<const Node>(Node{Kind::Div, {}, {}, {std::move(num), std::move(den)}, 0, Func::Sin}));
}

Expr Expr::pow(Expr base, long exponent) {
    return Expr(std::make_shared<const Node>(Node{Kind::Pow, {}, {}, {std::move(base)}, exponent, Func::Sin}));
}

Expr Expr::neg(Expr arg) {
    return Expr(std::make_shared<const Node>(Node{Kind::Neg, {}, {}, {std::move(arg)}, 0, Func::Sin}));
}

Expr Expr::call(Func f, Expr arg) {
    return Expr(std::make_shared<const Node>(Node{Kind::Call, {}, {}, {std::move(arg)}, 0, f}));
}

Expr::Kind Expr::kind() const { return node_->kind; }
const ComplexRational& Expr::value() const { return node_->value; }
const std::string& Expr::name() const { return node_->name; }
const std::vector<Expr>& Expr::children() const { return node_->children; }
long Expr::exponent() const { return node_->exponent; }
Func Expr::func() const { return node_->func; }

// ---- printing ----

namespace {

// 1: sum, 2: product/quotient/negation, 3: power, 4: primary
int precedence(const Expr& e) {
    switch (e.kind()) {
        case Expr::Kind::Add: return 1;
        case Expr::Kind::Mul:
        case Expr::Kind::Div:
        case Expr::Kind::Neg: return 2;
        case Expr::Kind::Pow: return 3;
        case Expr::Kind::Const: {
            const ComplexRational& c = e.value();
            if (!c.is_real()) return sgn(c.re()) == 0 ? 2 : 4;
            if (sgn(c.re()) < 0 || c.re().get_den() != 1) return 2;
            return 4;
        }
        default: return 4;
    }
}

bool negative_real(const Expr& e) { return e.kind() == Expr::Kind::Const && e.value().is_real() && sgn(e.value().re()) < 0; }

std::string wrap(const Expr& e, int min_prec) {
    std::string s = e.str();
    return precedence(e) < min_prec ? "(" + s + ")" : s;
}

}  // namespace

std::string Expr::str() const {
    switch (kind()) {
        case Kind::Const: return value().str();
        case Kind::Symbol: return name();
        case Kind::Call: return std::string(func_name(func())) + "(" + children()[0].str() + ")";
        case Kind::Neg: return "-" + wrap(children()[0], 2);
        case Kind::Pow: return wrap(children()[0], 4) + "^" + std::to_string(exponent());
        case Kind::Div: return wrap(children()[0], 2) + "/" + wrap(children()[1], 3);
        case Kind::Mul: {
            std::string out;
            for (std::size_t k = 0; k < children().size(); ++k) {
                const Expr& c = children()[k];
                if (k > 0) out += "*";
                bool parens = precedence(c) < 2 || (k > 0 && (c.kind() == Kind::Neg || negative_real(c))) ||
                              (k > 0 && c.kind() == Kind::Div);
                out += parens ? "(" + c.str() + ")" : c.str();
            }
            return out;
        }
        case Kind::Add: {
            std::string out;
            for (std::size_t k = 0; k < children().size(); ++k) {
                const Expr& c = children()[k];
                if (k == 0) {
                    out += c.str();
                } else if (c.kind() == Kind::Neg) {
                    out += " - " + wrap(c.children()[0], 2);
                } else if (negative_real(c)) {
                    out += " - " + Expr::constant(-c.value()).str();
                } else {
                    out += " + " + c.str();
                }
            }
            return out;
        }
    }
    return {};
}

// ---- normalization ----

Scalar normalize(const Expr& e) {
    switch (e.kind()) {
        case Expr::Kind::Const: return Scalar(e.value());
        case Expr::Kind::Symbol: return Scalar::coordinate(e.name());
        case Expr::Kind::Add: {
            Scalar out;
            for (const auto& c : e.children()) out += normalize(c);
            return out;
        }
        case Expr::Kind::Mul: {
            Scalar out(1);
            for (const auto& c : e.children()) out *= normalize(c);
            return out;
        }
        case Expr::Kind::Div: return normalize(e.children()[0]) / normalize(e.children()[1]);
        case Expr::Kind::Pow: {
            Scalar base = normalize(e.children()[0]);
            if (e.exponent() < 0 && base.is_zero()) throw DivisionByZero("negative power of zero");
            return base.pow(e.exponent());
        }
        case Expr::Kind::Neg: return -normalize(e.children()[0]);
        case Expr::Kind::Call: return Scalar::apply(e.func(), normalize(e.children()[0]));
    }
    return Scalar();
}

namespace {

int print_order(const Monomial& a, const Monomial& b) {
    if (a.degree() != b.degree()) return a.degree() > b.degree() ? 1 : -1;
    auto keyed = [](const Monomial& m) {
        std::vector<std::pair<std::string, std::uint32_t>> out;
        for (const auto& [v, e] : m.factors()) out.emplace_back(var_key(v), e);
        std::sort(out.begin(), out.end());
        return out;
    };
    auto ka = keyed(a);
    auto kb = keyed(b);
    std::size_t i = 0;
    while (i < ka.size() && i < kb.size()) {
        if (ka[i].first != kb[i].first) return ka[i].first < kb[i].first ? 1 : -1;
        if (ka[i].second != kb[i].second) return ka[i].second > kb[i].second ? 1 : -1;
        ++i;
    }
    if (i < ka.size()) return 1;
    if (i < kb.size()) return -1;
    return 0;
}

Expr var_expr(VarId v) {
    const VarInfo& info = var_info(v);
    if (info.kind == VarInfo::Kind::Coordinate) return Expr::symbol(info.name);
    return Expr::call(info.func, to_expr(*info.arg));
}

Expr term_expr(const Term& t) {
    std::vector<std::pair<std::string, Expr>> keyed;
    for (const auto& [v, e] : t.m.factors()) {
        Expr base = var_expr(v);
        keyed.emplace_back(var_key(v), e == 1 ? base : Expr::pow(base, e));
    }
    std::sort(keyed.begin(), keyed.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    std::vector<Expr> factors;
    for (auto& [k, f] : keyed) factors.push_back(f);
    const ComplexRational& c = t.c;
    const bool negative = (c.is_real() && sgn(c.re()) < 0) || (sgn(c.re()) == 0 && sgn(c.im()) < 0);
    if (factors.empty()) return negative ? Expr::neg(Expr::constant(-c)) : Expr::constant(c);
    if (c.is_one()) return Expr::mul(factors);
    if (negative) {
        if (!(-c).is_one()) factors.insert(factors.begin(), Expr::constant(-c));
        return Expr::neg(Expr::mul(factors));
    }
    factors.insert(factors.begin(), Expr::constant(c));
    return Expr::mul(factors);
}

Expr poly_expr(const Poly& p) {
    if (p.is_zero()) return Expr::constant(ComplexRational(0));
    std::vector<const Term*> ts;
    for (const auto& t : p.terms()) ts.push_back(&t);
    std::sort(ts.begin(), ts.end(), [](const Term* a, const Term* b) { return print_order(a->m, b->m) > 0; });
    std::vector<Expr> terms;
    for (const Term* t : ts) terms.push_back(term_expr(*t));
    return Expr::add(terms);
}

}  // namespace

Expr to_expr(const Scalar& s) {
    Expr num = poly_expr(s.num());
    if (s.den().is_one()) return num;
    return Expr::div(num, poly_expr(s.den()));
}

// ---- parsing ----

ParseError::ParseError(std::size_t pos, const std::string& msg)
    : std::runtime_error("parse error at position " + std::to_string(pos) + ": " + msg), position(pos) {}

namespace {

class Parser {
public:
    Parser(std::string_view text, const std::vector<std::string>& coords) : text_(text), coords_(coords) {}

    Expr parse() {
        skip_ws();
        if (pos_ == text_.size()) throw ParseError(pos_, "empty expression");
        Expr e = parse_sum();
        skip_ws();
        if (pos_ != text_.size()) throw ParseError(pos_, std::string("unexpected character '") + text_[pos_] + "'");
        return e;
    }

private:
    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    Expr parse_sum() {
        std::vector<Expr> terms{parse_product()};
        while (true) {
            if (accept('+')) {
                terms.push_back(parse_product());
            } else if (accept('-')) {
                terms.push_back(Expr::neg(parse_product()));
            } else {
                break;
            }
        }
        return Expr::add(std::move(terms));
    }

    Expr parse_product() {
        Expr acc = parse_unary();
        while (true) {
            if (accept('*')) {
                acc = Expr::mul({acc, parse_unary()});
            } else if (accept('/')) {
                acc = Expr::div(acc, parse_unary());
            } else {
                break;
            }
        }
        return acc;
    }

    Expr parse_unary() {
        if (accept('-')) return Expr::neg(parse_unary());
        if (accept('+')) return parse_unary();
        return parse_power();
    }

    Expr parse_power() {
        Expr base = parse_primary();
        skip_ws();
        if (accept('^')) {
            std::size_t at = pos_;
            Expr ex = parse_unary();
            Scalar v;
            try {
                v = normalize(ex);
            } catch (const DivisionByZero&) {
                throw ParseError(at, "division by zero in exponent");
            }
            auto c = v.constant();
            if (!c || !c->is_real() || c->re().get_den() != 1 || !c->re().get_num().fits_slong_p())
                throw ParseError(at, "exponent must be an integer constant");
            return Expr::pow(base, c->re().get_num().get_si());
        }
        return base;
    }

    Expr parse_primary() {
        skip_ws();
        if (pos_ == text_.size()) throw ParseError(pos_, "unexpected end of input");
        char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            Expr e = parse_sum();
            if (!accept(')')) throw ParseError(pos_, "expected ')'");
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
            mpz_class n(std::string(text_.substr(start, pos_ - start)));
            return Expr::constant(ComplexRational(mpq_class(n)));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
                ++pos_;
            std::string id(text_.substr(start, pos_ - start));
            skip_ws();
            if (pos_ < text_.size() && text_[pos_] == '(') {
                auto f = func_from_name(id);
                if (!f) throw ParseError(start, "unknown function '" + id + "'");
                ++pos_;
                Expr arg = parse_sum();
                if (!accept(')')) throw ParseError(pos_, "expected ')'");
                return Expr::call(*f, arg);
            }
            if (id == "i") return Expr::constant(ComplexRational::imag_unit());
            if (std::find(coords_.begin(), coords_.end(), id) == coords_.end())
                throw ParseError(start, "unknown identifier '" + id + "'");
            return Expr::symbol(id);
        }
        throw ParseError(pos_, std::string("unexpected character '") + c + "'");
    }

    std::string_view text_;
    const std::vector<std::string>& coords_;
    std::size_t pos_ = 0;
};

}  // namespace

Expr parse_expr(std::string_view text, const std::vector<std::string>& coordinates) {
    return Parser(text, coordinates).parse();
}

Scalar parse_scalar(std::string_view text, const std::vector<std::string>& coordinates) {
    Expr e = parse_expr(text, coordinates);
    try {
        return normalize(e);
    } catch (const DivisionByZero& ex) {
        throw ParseError(0, ex.what());
    }
}

Scalar parse_scalar(std::string_view text, const Chart& chart) { return parse_scalar(text, chart.coords()); }

}  // namespace alg
