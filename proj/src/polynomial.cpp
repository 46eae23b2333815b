#include "torres/polynomial.hpp"

#include <algorithm>
#include <cctype>

#include "torres/errors.hpp"

namespace torres {

Polynomial::Polynomial(int nvars, std::map<Exponents, QQ> terms)
    : nvars_(nvars), terms_(std::move(terms)) {
    for (auto it = terms_.begin(); it != terms_.end();) {
        if (static_cast<int>(it->first.size()) != nvars_)
            throw InternalError("polynomial: exponent vector length mismatch");
        if (it->second == 0) {
            it = terms_.erase(it);
        } else {
            ++it;
        }
    }
}

Polynomial Polynomial::constant(int nvars, const QQ& value) {
    Polynomial p(nvars);
    p.add_term(Exponents(nvars, 0), value);
    return p;
}

Polynomial Polynomial::monomial(int nvars, const Exponents& e, const QQ& coeff) {
    Polynomial p(nvars);
    p.add_term(e, coeff);
    return p;
}

QQ Polynomial::coefficient(const Exponents& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? QQ(0) : it->second;
}

void Polynomial::add_term(const Exponents& e, const QQ& coeff) {
    if (static_cast<int>(e.size()) != nvars_)
        throw InternalError("polynomial: exponent vector length mismatch");
    if (coeff == 0) return;
    auto [it, inserted] = terms_.emplace(e, coeff);
    if (!inserted) {
        it->second += coeff;
        if (it->second == 0) terms_.erase(it);
    }
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
    if (nvars_ != o.nvars_) throw InternalError("polynomial: variable count mismatch");
    Polynomial out = *this;
    for (const auto& [e, c] : o.terms_) out.add_term(e, c);
    return out;
}

Polynomial Polynomial::operator-(const Polynomial& o) const {
    if (nvars_ != o.nvars_) throw InternalError("polynomial: variable count mismatch");
    Polynomial out = *this;
    for (const auto& [e, c] : o.terms_) out.add_term(e, -c);
    return out;
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
    if (nvars_ != o.nvars_) throw InternalError("polynomial: variable count mismatch");
    Polynomial out(nvars_);
    for (const auto& [e1, c1] : terms_) {
        for (const auto& [e2, c2] : o.terms_) {
            Exponents e(nvars_);
            for (int i = 0; i < nvars_; ++i) e[i] = e1[i] + e2[i];
            out.add_term(e, c1 * c2);
        }
    }
    return out;
}

Polynomial Polynomial::operator-() const { return scaled(QQ(-1)); }

bool Polynomial::operator==(const Polynomial& o) const {
    return nvars_ == o.nvars_ && terms_ == o.terms_;
}

Polynomial Polynomial::scaled(const QQ& c) const {
    Polynomial out(nvars_);
    if (c == 0) return out;
    for (const auto& [e, v] : terms_) out.terms_.emplace(e, v * c);
    return out;
}

Polynomial Polynomial::pow(int k) const {
    if (k < 0) throw InputError("polynomial: negative exponent");
    Polynomial out = constant(nvars_, 1);
    for (int i = 0; i < k; ++i) out = out * (*this);
    return out;
}

Polynomial Polynomial::partial(int i) const {
    if (i < 0 || i >= nvars_) throw InputError("partial: variable index out of range");
    Polynomial out(nvars_);
    for (const auto& [e, c] : terms_) {
        if (e[i] == 0) continue;
        Exponents d = e;
        d[i] -= 1;
        out.add_term(d, c * e[i]);
    }
    return out;
}

Polynomial euler_apply(const EulerField& theta, const Polynomial& f) {
    if (static_cast<int>(theta.b.size()) != f.nvars())
        throw InputError("euler_apply: field length mismatch");
    Polynomial out(f.nvars());
    // x_rho d/dx_rho scales each term by its rho-exponent, so apply directly.
    for (const auto& [e, c] : f.terms()) {
        QQ factor = 0;
        for (int i = 0; i < f.nvars(); ++i) factor += theta.b[i] * e[i];
        out.add_term(e, c * factor);
    }
    return out;
}

std::optional<DegreeClass> is_homogeneous(const Fan& fan, const ClassGroup& cg,
                                          const Polynomial& p) {
    if (p.nvars() != fan.nrays()) throw InputError("is_homogeneous: variable count mismatch");
    if (p.is_zero()) return cg.degree_of(std::vector<long>(fan.nrays(), 0));
    std::optional<DegreeClass> deg;
    for (const auto& [e, c] : p.terms()) {
        std::vector<long> rep(e.begin(), e.end());
        DegreeClass d = cg.degree_of(rep);
        if (!deg) {
            deg = d;
        } else if (!(*deg == d)) {
            return std::nullopt;
        }
    }
    return deg;
}

Polynomial dehomogenize(const Fan& fan, const Polynomial& p, const std::vector<int>& I) {
    if (static_cast<int>(I.size()) != fan.rank)
        throw InputError("dehomogenize: chart must have rank-many rays");
    if (det_n(fan, I) == 0) throw InputError("dehomogenize: chart rays are dependent");
    Polynomial out(fan.rank);
    for (const auto& [e, c] : p.terms()) {
        Exponents chart(fan.rank);
        for (int k = 0; k < fan.rank; ++k) chart[k] = e[I[k]];
        out.add_term(chart, c);
    }
    return out;
}

namespace {

struct Token {
    enum Kind { Name, Number, Plus, Minus, Star, Caret, LParen, RParen, End } kind;
    std::string text;
    size_t pos;
};

class Lexer {
public:
    explicit Lexer(const std::string& s) : s_(s) {}

    Token next() {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
        size_t start = i_;
        if (i_ >= s_.size()) return {Token::End, "", start};
        char c = s_[i_];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            size_t j = i_;
            while (j < s_.size() && std::isdigit(static_cast<unsigned char>(s_[j]))) ++j;
            // rational literal p/q
            if (j < s_.size() && s_[j] == '/') {
                size_t k = j + 1;
                while (k < s_.size() && std::isdigit(static_cast<unsigned char>(s_[k]))) ++k;
                if (k == j + 1)
                    throw InputError("parse: malformed rational literal at position " +
                                     std::to_string(start));
                Token t{Token::Number, s_.substr(i_, k - i_), start};
                i_ = k;
                return t;
            }
            Token t{Token::Number, s_.substr(i_, j - i_), start};
            i_ = j;
            return t;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            size_t j = i_;
            while (j < s_.size() &&
                   (std::isalnum(static_cast<unsigned char>(s_[j])) || s_[j] == '_'))
                ++j;
            Token t{Token::Name, s_.substr(i_, j - i_), start};
            i_ = j;
            return t;
        }
        ++i_;
        switch (c) {
            case '+': return {Token::Plus, "+", start};
            case '-': return {Token::Minus, "-", start};
            case '*': return {Token::Star, "*", start};
            case '^': return {Token::Caret, "^", start};
            case '(': return {Token::LParen, "(", start};
            case ')': return {Token::RParen, ")", start};
        }
        throw InputError("parse: unexpected character '" + std::string(1, c) + "' at position " +
                         std::to_string(start));
    }

private:
    const std::string& s_;
    size_t i_ = 0;
};

class Parser {
public:
    Parser(const std::string& text, const std::vector<std::string>& variables)
        : lex_(text), vars_(variables) {
        cur_ = lex_.next();
    }

    Polynomial parse() {
        Polynomial p = expression();
        expect(Token::End, "end of input");
        return p;
    }

private:
    void advance() { cur_ = lex_.next(); }

    void expect(Token::Kind k, const std::string& what) {
        if (cur_.kind != k)
            throw InputError("parse: expected " + what + " at position " +
                             std::to_string(cur_.pos));
    }

    Polynomial expression() {
        int sign = 1;
        if (cur_.kind == Token::Plus || cur_.kind == Token::Minus) {
            sign = cur_.kind == Token::Minus ? -1 : 1;
            advance();
        }
        Polynomial acc = term().scaled(QQ(sign));
        while (cur_.kind == Token::Plus || cur_.kind == Token::Minus) {
            bool minus = cur_.kind == Token::Minus;
            advance();
            Polynomial t = term();
            acc = minus ? acc - t : acc + t;
        }
        return acc;
    }

    Polynomial term() {
        Polynomial acc = factor();
        while (cur_.kind == Token::Star) {
            advance();
            acc = acc * factor();
        }
        return acc;
    }

    Polynomial factor() {
        Polynomial base = atom();
        if (cur_.kind == Token::Caret) {
            advance();
            if (cur_.kind == Token::Minus)
                throw InputError("parse: negative exponent at position " +
                                 std::to_string(cur_.pos));
            expect(Token::Number, "integer exponent");
            if (cur_.text.find('/') != std::string::npos)
                throw InputError("parse: exponent must be an integer at position " +
                                 std::to_string(cur_.pos));
            int k = std::stoi(cur_.text);
            advance();
            return base.pow(k);
        }
        return base;
    }

    Polynomial atom() {
        int n = static_cast<int>(vars_.size());
        if (cur_.kind == Token::Number) {
            QQ v(cur_.text);
            v.canonicalize();
            advance();
            return Polynomial::constant(n, v);
        }
        if (cur_.kind == Token::Name) {
            auto it = std::find(vars_.begin(), vars_.end(), cur_.text);
            if (it == vars_.end())
                throw InputError("parse: unknown variable '" + cur_.text + "' at position " +
                                 std::to_string(cur_.pos));
            Exponents e(n, 0);
            e[it - vars_.begin()] = 1;
            advance();
            return Polynomial::monomial(n, e, QQ(1));
        }
        if (cur_.kind == Token::LParen) {
            advance();
            Polynomial p = expression();
            expect(Token::RParen, "')'");
            advance();
            return p;
        }
        throw InputError("parse: expected a value at position " + std::to_string(cur_.pos));
    }

    Lexer lex_;
    const std::vector<std::string>& vars_;
    Token cur_;
};

}  // namespace

Polynomial parse_polynomial(const std::string& text, const std::vector<std::string>& variables) {
    return Parser(text, variables).parse();
}

std::string to_string(const QQ& q) { return q.get_str(); }

std::string to_string(const Polynomial& p, const std::vector<std::string>& variables) {
    if (static_cast<int>(variables.size()) != p.nvars())
        throw InputError("to_string: variable name count mismatch");
    if (p.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [e, c] : p.terms()) {
        QQ a = c;
        if (first) {
            if (a < 0) {
                out += "-";
                a = -a;
            }
        } else {
            out += a < 0 ? " - " : " + ";
            if (a < 0) a = -a;
        }
        first = false;
        std::string mono;
        for (int i = 0; i < p.nvars(); ++i) {
            if (e[i] == 0) continue;
            if (!mono.empty()) mono += "*";
            mono += variables[i];
            if (e[i] > 1) mono += "^" + std::to_string(e[i]);
        }
        if (mono.empty()) {
            out += a.get_str();
        } else if (a == 1) {
            out += mono;
        } else {
            out += a.get_str() + "*" + mono;
        }
    }
    return out;
}

}  // namespace torres
