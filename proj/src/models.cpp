#include "models.hpp"

#include <algorithm>
#include <cctype>
#include <cstring>
#include <functional>
#include <sstream>

namespace zl::models {

using bundles::Expr;

int ModelRecord::picard_from_id() const {
    const std::string& s = delPezzo() ? id.substr(3) : id;
    size_t dash = s.find('-');
    return std::stoi(s.substr(0, dash));
}

namespace {

class Parser {
public:
    explicit Parser(const std::string& text) : t_(text) {}

    std::vector<ModelRecord> records() {
        std::vector<ModelRecord> out;
        skip();
        while (pos_ < t_.size()) {
            out.push_back(record());
            skip();
        }
        return out;
    }

private:
    const std::string& t_;
    size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& msg) { throw ParseError(msg, pos_); }

    void skip() {
        while (pos_ < t_.size()) {
            if (std::isspace((unsigned char)t_[pos_])) {
                ++pos_;
            } else if (t_[pos_] == '#') {
                while (pos_ < t_.size() && t_[pos_] != '\n') ++pos_;
            } else {
                break;
            }
        }
    }

    bool peek(char c) {
        skip();
        return pos_ < t_.size() && t_[pos_] == c;
    }

    bool eat(char c) {
        if (!peek(c)) return false;
        ++pos_;
        return true;
    }

    void expect(char c) {
        if (!eat(c)) fail(std::string("expected '") + c + "'");
    }

    bool eat_word(const std::string& w) {
        skip();
        if (t_.compare(pos_, w.size(), w) != 0) return false;
        size_t end = pos_ + w.size();
        if (end < t_.size() && (std::isalnum((unsigned char)t_[end]) || t_[end] == '-')) return false;
        pos_ = end;
        return true;
    }

    void expect_word(const std::string& w) {
        if (!eat_word(w)) fail("expected '" + w + "'");
    }

    std::string word() {
        skip();
        size_t start = pos_;
        while (pos_ < t_.size() && (std::isalnum((unsigned char)t_[pos_]) || t_[pos_] == '-')) ++pos_;
        if (start == pos_) fail("expected a word");
        return t_.substr(start, pos_ - start);
    }

    long long integer() {
        skip();
        size_t start = pos_;
        if (pos_ < t_.size() && (t_[pos_] == '-' || t_[pos_] == '+')) ++pos_;
        while (pos_ < t_.size() && std::isdigit((unsigned char)t_[pos_])) ++pos_;
        if (pos_ == start || (pos_ == start + 1 && !std::isdigit((unsigned char)t_[start])))
            fail("expected an integer");
        return std::stoll(t_.substr(start, pos_ - start));
    }

    std::vector<int> int_list(char sep = ',') {
        std::vector<int> v;
        v.push_back((int)integer());
        while (eat(sep)) v.push_back((int)integer());
        return v;
    }

    bwb::Factor factor() {
        skip();
        if (eat_word("P")) {
            expect('(');
            int m = (int)integer();
            expect(')');
            return bwb::Factor::projective(m);
        }
        if (eat_word("Gr")) {
            expect('(');
            int k = (int)integer();
            expect(',');
            int n = (int)integer();
            expect(')');
            return bwb::Factor::grassmannian(k, n);
        }
        if (eat_word("Fl")) {
            expect('(');
            std::vector<int> ks;
            ks.push_back((int)integer());
            while (eat(',')) ks.push_back((int)integer());
            expect(';');
            int n = (int)integer();
            expect(')');
            return bwb::Factor::flag(std::move(ks), n);
        }
        if (eat_word("WP")) {
            expect('(');
            auto w = int_list();
            expect(')');
            return bwb::Factor::weighted(std::move(w));
        }
        fail("expected a factor (P, Gr, Fl or WP)");
    }

    Space space() {
        Space s;
        s.factors.push_back(factor());
        while (eat_word("x")) s.factors.push_back(factor());
        return s;
    }

    std::vector<int> twist_vector(const Space& sp) {
        expect('(');
        auto v = int_list();
        expect(')');
        if ((int)v.size() != sp.picard_rank()) fail("twist arity does not match the Picard rank");
        return v;
    }

    bool match_prefix(const char* w) {
        skip();
        size_t n = std::strlen(w);
        if (t_.compare(pos_, n, w) != 0) return false;
        pos_ += n;
        return true;
    }

    ExprPtr atom(const Space& sp) {
        skip();
        ExprPtr e;
        if (eat_word("O")) {
            e = Expr::line(twist_vector(sp));
        } else if (peek('U') || peek('Q')) {
            bool isU = t_[pos_] == 'U';
            ++pos_;
            int f = (int)integer();
            int idx = 1;
            if (eat('.')) idx = (int)integer();
            if (f < 1 || f > (int)sp.factors.size()) fail("no such factor");
            const auto& fac = sp.factors[f - 1];
            if (fac.weighted_factor()) fail("tautological bundle on a weighted factor");
            if (idx < 1 || idx > (int)fac.ks.size()) fail("no such tautological step");
            e = Expr::taut(isU, f - 1, idx);
        } else if (eat_word("dual")) {
            expect('(');
            e = Expr::dual(bundle(sp));
            expect(')');
        } else if (match_prefix("Sym")) {
            int k = (int)integer();
            expect('(');
            e = Expr::sym(k, bundle(sp));
            expect(')');
        } else if (match_prefix("Wedge")) {
            int k = (int)integer();
            expect('(');
            e = Expr::wedge(k, bundle(sp));
            expect(')');
        } else if (match_prefix("Schur")) {
            expect('[');
            auto lam = int_list();
            expect(']');
            expect('(');
            e = Expr::schur_of(lam, bundle(sp));
            expect(')');
        } else if (match_prefix("Ext")) {
            expect('[');
            std::vector<ExprPtr> pieces;
            pieces.push_back(bundle(sp));
            while (eat(',')) pieces.push_back(bundle(sp));
            expect(']');
            if (pieces.size() < 2) fail("Ext needs at least two graded pieces");
            e = Expr::ext(std::move(pieces));
        } else {
            fail("expected an atom");
        }
        // postfix twists
        while (peek('(')) e = Expr::twisted(e, twist_vector(sp));
        return e;
    }

    ExprPtr product(const Space& sp) {
        ExprPtr e = atom(sp);
        while (eat('*')) e = Expr::tensor(e, atom(sp));
        return e;
    }

    ExprPtr bundle(const Space& sp) {
        ExprPtr e = product(sp);
        while (peek('+')) {
            ++pos_;
            e = Expr::sum(e, product(sp));
        }
        return e;
    }

    ModelRecord record() {
        ModelRecord r;
        expect_word("model");
        r.id = word();
        if (eat_word("alt")) r.variant = (int)integer();
        expect_word("on");
        r.space = space();
        expect_word("cut");
        if (eat_word("none")) {
            r.bundle = nullptr;
        } else {
            r.bundle = bundle(r.space);
        }
        if (eat_word("expect")) {
            expect('(');
            do {
                skip();
                if (eat('_')) r.expected.values.push_back(std::nullopt);
                else r.expected.values.push_back(integer());
            } while (eat(','));
            expect(')');
        }
        if (eat_word("tags")) {
            do {
                std::string tag = word();
                if (tag == "restricted-section") r.tagRestrictedSection = true;
                else if (tag == "weighted-stored-only") r.tagWeightedStoredOnly = true;
                else if (tag == "extension-bundle") r.tagExtensionBundle = true;
                else fail("unknown tag '" + tag + "'");
            } while (eat(','));
        }
        expect(';');
        return r;
    }
};

std::string print_twist(const std::vector<int>& v) {
    std::string s = "(";
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(v[i]);
    }
    return s + ")";
}

std::string print_expr(const ExprPtr& e, bool atomContext);

std::string print_atom(const ExprPtr& e) { return print_expr(e, true); }

std::string print_expr(const ExprPtr& e, bool atomContext) {
    switch (e->op) {
        case Expr::Op::Zero: return "none";
        case Expr::Op::Line: return "O" + print_twist(e->twist);
        case Expr::Op::Taut: {
            std::string s = (e->tautU ? "U" : "Q") + std::to_string(e->factor + 1);
            if (e->tautIdx != 1) s += "." + std::to_string(e->tautIdx);
            return s;
        }
        case Expr::Op::Dual: return "dual(" + print_expr(e->kids[0], false) + ")";
        case Expr::Op::Twist: return print_atom(e->kids[0]) + print_twist(e->twist);
        case Expr::Op::Tensor: {
            std::string s = print_atom(e->kids[0]) + "*" + print_atom(e->kids[1]);
            if (atomContext) throw std::logic_error("cannot print a tensor in atom position");
            return s;
        }
        case Expr::Op::Sum: {
            if (atomContext) throw std::logic_error("cannot print a sum in atom position");
            return print_expr(e->kids[0], false) + "+" + print_expr(e->kids[1], false);
        }
        case Expr::Op::Wedge:
            return "Wedge" + std::to_string(e->power) + "(" + print_expr(e->kids[0], false) + ")";
        case Expr::Op::Sym:
            return "Sym" + std::to_string(e->power) + "(" + print_expr(e->kids[0], false) + ")";
        case Expr::Op::Schur: {
            std::string s = "Schur[";
            for (size_t i = 0; i < e->schur.size(); ++i) {
                if (i) s += ",";
                s += std::to_string(e->schur[i]);
            }
            return s + "](" + print_expr(e->kids[0], false) + ")";
        }
        case Expr::Op::Ext: {
            std::string s = "Ext[";
            for (size_t i = 0; i < e->kids.size(); ++i) {
                if (i) s += ", ";
                s += print_expr(e->kids[i], false);
            }
            return s + "]";
        }
    }
    return "";
}

} // namespace

std::vector<ModelRecord> parse(const std::string& text) { return Parser(text).records(); }

std::string print_space(const Space& s) { return s.str(); }

std::string print_bundle(const ExprPtr& e) {
    if (!e) return "none";
    return print_expr(e, false);
}

std::string print_record(const ModelRecord& r) {
    std::ostringstream os;
    os << "model " << r.id;
    if (r.variant != 0) os << " alt " << r.variant;
    os << " on " << print_space(r.space) << " cut " << print_bundle(r.bundle);
    if (!r.expected.values.empty()) {
        os << " expect (";
        for (size_t i = 0; i < r.expected.values.size(); ++i) {
            if (i) os << ",";
            if (r.expected.values[i]) os << *r.expected.values[i];
            else os << "_";
        }
        os << ")";
    }
    std::vector<std::string> tags;
    if (r.tagRestrictedSection) tags.push_back("restricted-section");
    if (r.tagWeightedStoredOnly) tags.push_back("weighted-stored-only");
    if (r.tagExtensionBundle) tags.push_back("extension-bundle");
    if (!tags.empty()) {
        os << " tags ";
        for (size_t i = 0; i < tags.size(); ++i) os << (i ? "," : "") << tags[i];
    }
    os << ";";
    return os.str();
}

std::vector<const ModelRecord*> lookup(const std::string& idPrefix) {
    std::vector<const ModelRecord*> out;
    for (const auto& r : catalog())
        if (r.id.rfind(idPrefix, 0) == 0) out.push_back(&r);
    std::sort(out.begin(), out.end(), [](const ModelRecord* a, const ModelRecord* b) {
        if (a->id != b->id) return a->id < b->id;
        return a->variant < b->variant;
    });
    return out;
}

namespace {

std::string ival_str(const koszul::Ival& iv) {
    if (iv.exact()) return iv.lb.str();
    return "[" + iv.lb.str() + "," + (iv.bounded() ? iv.ub.str() : std::string("inf")) + "]";
}

void add_field(VerifyReport& rep, const std::string& name, const Int& computed,
               const std::optional<long long>& expected) {
    FieldCheck f;
    f.name = name;
    f.computed = computed.str();
    if (expected) {
        f.expected = std::to_string(*expected);
        f.pass = computed == Int(*expected);
        if (!f.pass) rep.status = VerifyReport::Status::Fail;
    }
    rep.fields.push_back(std::move(f));
}

} // namespace

VerifyReport verify(const ModelRecord& r) {
    VerifyReport rep;
    rep.id = r.id;
    rep.variant = r.variant;
    if (r.tagWeightedStoredOnly || r.space.has_weighted()) {
        rep.status = VerifyReport::Status::NotMachineVerifiable;
        return rep;
    }
    try {
        const int d = r.delPezzo() ? 2 : 3;
        auto ctx = std::make_shared<bundles::Ctx>(r.space);
        ExprPtr F = r.bundle ? r.bundle : Expr::zero();

        // dimension check
        Int rank = bundles::expr_rank(*ctx, F);
        Int expectedDim = Int(r.space.dim()) - rank;
        {
            FieldCheck f;
            f.name = "dimension";
            f.computed = expectedDim.str();
            f.expected = std::to_string(d);
            f.pass = expectedDim == d;
            bool ok = f.pass;
            if (!ok) rep.status = VerifyReport::Status::Fail;
            rep.fields.push_back(std::move(f));
            if (!ok) return rep;
        }

        koszul::Problem pb = koszul::make_problem(ctx, F, true);
        pb.formal = r.tagRestrictedSection;
        rep.formal = pb.formal;

        Int deg = chow::anticanonical_degree(*ctx, pb.F, d);
        Int chiK = koszul::h0_anticanonical(pb);
        auto tab = koszul::hodge_numbers(pb);
        rep.constraintsUsed = tab.constraintsUsed;
        for (int p = 0; p <= tab.d; ++p)
            for (int q = 0; q <= tab.d; ++q)
                if (!tab.h[p][q].exact())
                    rep.notPinched.push_back("h" + std::to_string(p) + "," + std::to_string(q) + "=" +
                                             ival_str(tab.h[p][q]));

        if (r.delPezzo()) {
            add_field(rep, "K2", deg, r.expected.values.size() > 0 ? r.expected.values[0] : std::nullopt);
            add_field(rep, "chi(-K)", chiK, r.expected.values.size() > 1 ? r.expected.values[1] : std::nullopt);
        } else {
            add_field(rep, "h0(-K)", chiK, r.expected.values.size() > 0 ? r.expected.values[0] : std::nullopt);
            add_field(rep, "(-K)^3", deg, r.expected.values.size() > 1 ? r.expected.values[1] : std::nullopt);
            // h^{0,q} must vanish for q > 0
            for (int q = 1; q <= tab.d; ++q) {
                FieldCheck f;
                f.name = "h0," + std::to_string(q);
                f.computed = ival_str(tab.h[0][q]);
                f.expected = "0";
                f.pass = tab.h[0][q].exact() && tab.h[0][q].lb == 0;
                if (!f.pass) rep.status = VerifyReport::Status::Fail;
                rep.fields.push_back(std::move(f));
            }
            // h^{1,1} against the Picard rank encoded in the id
            {
                FieldCheck f;
                f.name = "h1,1";
                f.computed = ival_str(tab.h[1][1]);
                long long rho = r.expected.values.size() > 3 && r.expected.values[3]
                                    ? *r.expected.values[3]
                                    : r.picard_from_id();
                f.expected = std::to_string(rho);
                f.pass = tab.h[1][1].exact() && tab.h[1][1].lb == Int(rho);
                if (!f.pass) rep.status = VerifyReport::Status::Fail;
                rep.fields.push_back(std::move(f));
            }
            // h^{2,1}
            {
                std::optional<long long> expected =
                    r.expected.values.size() > 2 ? r.expected.values[2] : std::nullopt;
                FieldCheck f;
                f.name = "h2,1";
                f.computed = ival_str(tab.h[2][1]);
                if (expected) {
                    f.expected = std::to_string(*expected);
                    f.pass = tab.h[2][1].exact() && tab.h[2][1].lb == Int(*expected);
                    if (!f.pass) rep.status = VerifyReport::Status::Fail;
                }
                rep.fields.push_back(std::move(f));
            }
        }
    } catch (const std::exception& e) {
        rep.status = VerifyReport::Status::Fail;
        rep.error = e.what();
    }
    return rep;
}

} // namespace zl::models
