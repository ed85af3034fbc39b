#include "cmpairs/dsl.hpp"

#include <fstream>
#include <sstream>

namespace cmpairs {

const DslDocument::RingDecl* DslDocument::ring(const std::string& name) const
{
    for (const auto& r : rings)
        if (r.name == name)
            return &r;
    return nullptr;
}
const DslDocument::IdealDecl* DslDocument::ideal(const std::string& name) const
{
    for (const auto& i : ideals)
        if (i.name == name)
            return &i;
    return nullptr;
}
const DslDocument::ModuleDecl* DslDocument::module(const std::string& name) const
{
    for (const auto& m : modules)
        if (m.name == name)
            return &m;
    return nullptr;
}
const DslDocument::PairDecl* DslDocument::pair(const std::string& name) const
{
    for (const auto& p : pairs)
        if (p.name == name)
            return &p;
    return nullptr;
}

namespace {

struct Lexer {
    const std::string& s;
    size_t pos = 0;
    int line = 1, col = 1;

    void advance(char c)
    {
        if (c == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
        ++pos;
    }

    void skip_ws()
    {
        while (pos < s.size()) {
            char c = s[pos];
            if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
                advance(c);
            } else if (c == '#') { // line comment
                while (pos < s.size() && s[pos] != '\n')
                    advance(s[pos]);
            } else {
                break;
            }
        }
    }

    bool eof()
    {
        skip_ws();
        return pos >= s.size();
    }

    char peek()
    {
        skip_ws();
        return pos < s.size() ? s[pos] : '\0';
    }

    DslDocument::Span span()
    {
        skip_ws();
        return {line, col};
    }

    [[noreturn]] void error(const std::string& msg)
    {
        fail("ParseError", std::to_string(line) + ":" + std::to_string(col) + ": " + msg);
    }

    void expect(char c)
    {
        if (peek() != c)
            error(std::string("expected '") + c + "'");
        advance(s[pos]);
    }

    bool accept(char c)
    {
        if (peek() == c) {
            advance(s[pos]);
            return true;
        }
        return false;
    }

    static bool ident_start(char c)
    {
        return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
    }
    static bool ident_char(char c) { return ident_start(c) || (c >= '0' && c <= '9'); }

    std::string ident()
    {
        if (!ident_start(peek()))
            error("identifier expected");
        std::string out;
        while (pos < s.size() && ident_char(s[pos])) {
            out += s[pos];
            advance(s[pos]);
        }
        return out;
    }

    bool accept_word(const std::string& w)
    {
        skip_ws();
        size_t save_pos = pos;
        int save_line = line, save_col = col;
        if (!ident_start(peek()))
            return false;
        std::string got = ident();
        if (got == w)
            return true;
        pos = save_pos;
        line = save_line;
        col = save_col;
        return false;
    }

    void expect_word(const std::string& w)
    {
        if (!accept_word(w))
            error("expected '" + w + "'");
    }

    long long integer()
    {
        skip_ws();
        bool negp = accept('-');
        if (!(peek() >= '0' && peek() <= '9'))
            error("integer expected");
        long long v = 0;
        while (pos < s.size() && s[pos] >= '0' && s[pos] <= '9') {
            v = v * 10 + (s[pos] - '0');
            advance(s[pos]);
        }
        return negp ? -v : v;
    }

    // raw text until one of the stop characters at depth 0 of ( )
    std::string balanced_until(const std::string& stops)
    {
        skip_ws();
        std::string out;
        int depth = 0;
        while (pos < s.size()) {
            char c = s[pos];
            if (depth == 0 && stops.find(c) != std::string::npos)
                break;
            if (c == '(')
                ++depth;
            if (c == ')') {
                if (depth == 0)
                    break;
                --depth;
            }
            out += c;
            advance(c);
        }
        return out;
    }
};

struct Parser {
    Lexer lx;
    DslDocument doc;

    explicit Parser(const std::string& text) : lx{text} {}

    const RingPtr& resolve_ring(const std::string& name, const DslDocument::Span& sp)
    {
        const auto* r = doc.ring(name);
        if (!r)
            fail("UnresolvedName", std::to_string(sp.line) + ":" + std::to_string(sp.col) +
                                       ": unknown ring '" + name + "'");
        return r->ring;
    }

    // default ring when a declaration omits `in R`: unique if one ring declared
    std::string default_ring(const DslDocument::Span& sp)
    {
        if (doc.rings.size() == 1)
            return doc.rings[0].name;
        fail("UnresolvedName",
             std::to_string(sp.line) + ":" + std::to_string(sp.col) +
                 ": ambiguous ring; use 'in <ring>' when several rings are declared");
    }

    void check_fresh(const std::string& name, const DslDocument::Span& sp)
    {
        if (doc.ring(name) || doc.ideal(name) || doc.module(name) || doc.pair(name))
            fail("DuplicateName", std::to_string(sp.line) + ":" + std::to_string(sp.col) +
                                      ": name '" + name + "' already declared");
    }

    Degree parse_degree(const Ring& ring)
    {
        if (ring.grading == Grading::Coarse) {
            return Degree{{static_cast<int>(lx.integer())}};
        }
        lx.expect('(');
        Degree d;
        while (true) {
            d.v.push_back(static_cast<int>(lx.integer()));
            if (!lx.accept(','))
                break;
        }
        lx.expect(')');
        if (d.len() != ring.degree_len())
            lx.error("degree tuple has wrong length for this ring");
        return d;
    }

    std::vector<Degree> parse_shift_list(const Ring& ring)
    {
        lx.expect('[');
        std::vector<Degree> out;
        if (lx.peek() != ']') {
            while (true) {
                out.push_back(parse_degree(ring));
                if (!lx.accept(','))
                    break;
            }
        }
        lx.expect(']');
        return out;
    }

    // [[p, q], [r, s]] — rows of polynomials
    Matrix parse_matrix(const Ring& ring)
    {
        lx.expect('[');
        std::vector<std::vector<Poly>> rows;
        if (lx.peek() != ']') {
            while (true) {
                lx.expect('[');
                std::vector<Poly> row;
                if (lx.peek() != ']') {
                    while (true) {
                        std::string txt = lx.balanced_until(",]");
                        row.push_back(parse_poly(ring, txt));
                        if (!lx.accept(','))
                            break;
                    }
                }
                lx.expect(']');
                rows.push_back(std::move(row));
                if (!lx.accept(','))
                    break;
            }
        }
        lx.expect(']');
        Matrix m{static_cast<int>(rows.size()), {}};
        size_t ncols = rows.empty() ? 0 : rows[0].size();
        for (const auto& r : rows)
            if (r.size() != ncols)
                lx.error("ragged matrix rows");
        for (size_t j = 0; j < ncols; ++j) {
            Vec col;
            for (size_t i = 0; i < rows.size(); ++i)
                if (!rows[i][j].is_zero())
                    col.comps.emplace_back(static_cast<int>(i), rows[i][j]);
            m.cols.push_back(std::move(col));
        }
        return m;
    }

    std::string render_matrix(const Ring& ring, const Matrix& m)
    {
        std::string s = "[";
        for (int i = 0; i < m.rows; ++i) {
            if (i)
                s += ", ";
            s += "[";
            for (int j = 0; j < m.ncols(); ++j) {
                if (j)
                    s += ", ";
                const Poly* p = entry(m, i, j);
                s += p ? to_string(ring, *p) : "0";
            }
            s += "]";
        }
        return s + "]";
    }

    std::string render_shifts(const std::vector<Degree>& ds)
    {
        std::string s = "[";
        for (size_t i = 0; i < ds.size(); ++i) {
            if (i)
                s += ", ";
            s += ds[i].str();
        }
        return s + "]";
    }

    void parse_ring_decl()
    {
        auto sp = lx.span();
        std::string name = lx.ident();
        check_fresh(name, sp);
        lx.expect('=');
        lx.expect_word("poly");
        lx.expect('(');
        std::vector<std::string> vars;
        while (true) {
            vars.push_back(lx.ident());
            if (!lx.accept(','))
                break;
        }
        lx.expect(')');
        std::string rel_text;
        bool has_rel = false;
        if (lx.accept('/')) {
            lx.expect('(');
            rel_text = lx.balanced_until(")");
            lx.expect(')');
            has_rel = true;
        }
        uint32_t characteristic = 32003;
        if (lx.accept_word("over")) {
            lx.expect_word("GF");
            lx.expect('(');
            characteristic = static_cast<uint32_t>(lx.integer());
            lx.expect(')');
        }
        Grading grading = Grading::Fine;
        std::vector<int> weights;
        if (lx.accept_word("grading")) {
            if (lx.accept_word("fine")) {
                grading = Grading::Fine;
            } else {
                lx.expect_word("coarse");
                lx.expect_word("weights");
                lx.expect('(');
                while (true) {
                    weights.push_back(static_cast<int>(lx.integer()));
                    if (!lx.accept(','))
                        break;
                }
                lx.expect(')');
                grading = Grading::Coarse;
            }
        }
        OrderKind order = OrderKind::Grevlex;
        if (lx.accept_word("order")) {
            if (lx.accept_word("lex"))
                order = OrderKind::Lex;
            else
                lx.expect_word("grevlex");
        }
        lx.expect(';');

        auto scratch = make_ring_unchecked(vars, characteristic, order, grading,
                                           grading == Grading::Coarse
                                               ? weights
                                               : std::vector<int>(vars.size(), 1),
                                           {});
        std::vector<Poly> rels;
        if (has_rel)
            rels = parse_polys(*scratch, rel_text);
        RingPtr ring = make_ring(vars, characteristic, order, grading, weights, rels);

        std::ostringstream os;
        os << "ring " << name << " = poly(";
        for (size_t i = 0; i < vars.size(); ++i)
            os << (i ? ", " : "") << vars[i];
        os << ")";
        if (!ring->relations.empty()) {
            os << " / (";
            for (size_t i = 0; i < ring->relations.size(); ++i)
                os << (i ? ", " : "") << to_string(*ring, ring->relations[i]);
            os << ")";
        }
        os << " over GF(" << characteristic << ")";
        os << " grading ";
        if (grading == Grading::Fine) {
            os << "fine";
        } else {
            os << "coarse weights (";
            for (size_t i = 0; i < weights.size(); ++i)
                os << (i ? ", " : "") << weights[i];
            os << ")";
        }
        if (order == OrderKind::Lex)
            os << " order lex";
        os << ";";
        doc.rings.push_back({name, ring, sp, os.str()});
        doc.statement_order.push_back(os.str());
    }

    void parse_ideal_decl()
    {
        auto sp = lx.span();
        std::string name = lx.ident();
        check_fresh(name, sp);
        lx.expect('=');
        lx.expect('(');
        std::string gens_text = lx.balanced_until(")");
        lx.expect(')');
        std::string ring_name;
        if (lx.accept_word("in"))
            ring_name = lx.ident();
        else
            ring_name = default_ring(sp);
        lx.expect(';');
        const RingPtr& ring = resolve_ring(ring_name, sp);
        IdealGens gens;
        for (auto& p : parse_polys(*ring, gens_text)) {
            Poly q = ring_normal_form(ring, p);
            if (!q.is_zero())
                gens.push_back(std::move(q));
        }
        std::ostringstream os;
        os << "ideal " << name << " = (";
        for (size_t i = 0; i < gens.size(); ++i)
            os << (i ? ", " : "") << to_string(*ring, gens[i]);
        os << ") in " << ring_name << ";";
        doc.ideals.push_back({name, ring_name, gens, sp, os.str()});
        doc.statement_order.push_back(os.str());
    }

    GradedModule resolve_module(const std::string& name, const DslDocument::Span& sp,
                                std::string* ring_name = nullptr)
    {
        const auto* m = doc.module(name);
        if (!m)
            fail("UnresolvedName", std::to_string(sp.line) + ":" + std::to_string(sp.col) +
                                       ": unknown module '" + name + "'");
        if (ring_name)
            *ring_name = m->ring_name;
        return m->mod;
    }

    void parse_module_decl()
    {
        auto sp = lx.span();
        std::string name = lx.ident();
        check_fresh(name, sp);
        lx.expect('=');
        std::string kind = lx.ident();
        GradedModule result;
        std::string ring_name;
        std::ostringstream expr;
        lx.expect('(');
        try {
            if (kind == "coker" || kind == "image" || kind == "free") {
                ring_name = lx.ident();
                const RingPtr& ring = resolve_ring(ring_name, sp);
                Matrix m{0, {}};
                std::vector<Degree> shifts;
                bool have_shifts = false;
                if (kind != "free") {
                    lx.expect(',');
                    m = parse_matrix(*ring);
                }
                if (lx.accept(',')) {
                    lx.expect_word("shifts");
                    lx.expect('=');
                    shifts = parse_shift_list(*ring);
                    have_shifts = true;
                }
                lx.expect(')');
                if (!have_shifts)
                    shifts.assign(static_cast<size_t>(m.rows), ring->zero_degree());
                if (kind == "free") {
                    if (!have_shifts)
                        shifts = {ring->zero_degree()};
                    result = free_module(ring, shifts);
                    expr << "free(" << ring_name << ", shifts = " << render_shifts(shifts)
                         << ")";
                } else if (kind == "coker") {
                    if (m.rows == 0 && have_shifts)
                        m.rows = static_cast<int>(shifts.size());
                    result = make_module(ring, shifts, m);
                    expr << "coker(" << ring_name << ", " << render_matrix(*ring, m)
                         << ", shifts = " << render_shifts(shifts) << ")";
                } else {
                    result = image_module(ring, shifts, m);
                    expr << "image(" << ring_name << ", " << render_matrix(*ring, m)
                         << ", shifts = " << render_shifts(shifts) << ")";
                }
            } else if (kind == "quotient") {
                std::string mn = lx.ident();
                GradedModule base = resolve_module(mn, sp, &ring_name);
                lx.expect(',');
                Matrix extra = parse_matrix(*base.ring);
                lx.expect(')');
                result = quotient_module(base, extra);
                expr << "quotient(" << mn << ", " << render_matrix(*base.ring, extra)
                     << ")";
            } else if (kind == "shift") {
                std::string mn = lx.ident();
                GradedModule base = resolve_module(mn, sp, &ring_name);
                lx.expect(',');
                Degree d = parse_degree(*base.ring);
                lx.expect(')');
                result = twist(base, d);
                expr << "shift(" << mn << ", " << d.str() << ")";
            } else if (kind == "ext" || kind == "tor") {
                int i = static_cast<int>(lx.integer());
                lx.expect(',');
                std::string mn = lx.ident();
                lx.expect(',');
                std::string nn = lx.ident();
                lx.expect(')');
                GradedModule mm = resolve_module(mn, sp, &ring_name);
                GradedModule nm = resolve_module(nn, sp);
                result = kind == "ext" ? ext_module(i, mm, nm) : tor_module(i, mm, nm);
                expr << kind << "(" << i << ", " << mn << ", " << nn << ")";
            } else if (kind == "hom" || kind == "tensor") {
                std::string mn = lx.ident();
                lx.expect(',');
                std::string nn = lx.ident();
                lx.expect(')');
                GradedModule mm = resolve_module(mn, sp, &ring_name);
                GradedModule nm = resolve_module(nn, sp);
                result = kind == "hom" ? hom_module(mm, nm) : tensor_modules(mm, nm);
                expr << kind << "(" << mn << ", " << nn << ")";
            } else if (kind == "deficiency") {
                int q = static_cast<int>(lx.integer());
                lx.expect(',');
                std::string nn = lx.ident();
                lx.expect(')');
                GradedModule nm = resolve_module(nn, sp, &ring_name);
                result = deficiency(q, nm);
                expr << "deficiency(" << q << ", " << nn << ")";
            } else if (kind == "change_ring") {
                std::string rn = lx.ident();
                lx.expect(',');
                std::string mn = lx.ident();
                lx.expect(')');
                const RingPtr& target = resolve_ring(rn, sp);
                GradedModule mm = resolve_module(mn, sp);
                result = change_ring(target, mm);
                ring_name = rn;
                expr << "change_ring(" << rn << ", " << mn << ")";
            } else {
                lx.error("unknown module constructor '" + kind + "'");
            }
        } catch (const AlgebraError& e) {
            if (e.code() == "ParseError" || e.code() == "UnresolvedName" ||
                e.code() == "DuplicateName")
                throw;
            fail(e.code(), std::to_string(sp.line) + ":" + std::to_string(sp.col) +
                               ": in module '" + name + "': " + e.what());
        }
        lx.expect(';');
        std::string printed = "module " + name + " = " + expr.str() + ";";
        doc.modules.push_back({name, ring_name, std::move(result), sp, printed});
        doc.statement_order.push_back(printed);
    }

    void parse_pair_decl()
    {
        auto sp = lx.span();
        std::string name = lx.ident();
        check_fresh(name, sp);
        lx.expect('=');
        lx.expect('(');
        std::string mn = lx.ident();
        lx.expect(',');
        std::string nn = lx.ident();
        lx.expect(')');
        lx.expect_word("wrt");
        std::string in = lx.ident();
        std::string cn;
        if (lx.accept_word("with")) {
            lx.expect_word("C");
            lx.expect('=');
            cn = lx.ident();
        }
        lx.expect(';');
        resolve_module(mn, sp);
        resolve_module(nn, sp);
        if (!doc.ideal(in))
            fail("UnresolvedName", std::to_string(sp.line) + ":" + std::to_string(sp.col) +
                                       ": unknown ideal '" + in + "'");
        if (!cn.empty())
            resolve_module(cn, sp);
        std::string printed = "pair " + name + " = (" + mn + ", " + nn + ") wrt " + in +
                              (cn.empty() ? "" : " with C = " + cn) + ";";
        doc.pairs.push_back({name, mn, nn, in, cn, sp, printed});
        doc.statement_order.push_back(printed);
    }

    void parse_expect_decl()
    {
        auto sp = lx.span();
        std::string target = lx.ident();
        lx.expect('.');
        std::string field = lx.ident();
        lx.expect('=');
        std::string raw = lx.balanced_until(";");
        lx.expect(';');
        auto trim = [](std::string s) {
            while (!s.empty() && (s.back() == ' ' || s.back() == '\t'))
                s.pop_back();
            size_t b = 0;
            while (b < s.size() && (s[b] == ' ' || s[b] == '\t'))
                ++b;
            return s.substr(b);
        };
        std::string value, tag = "derived";
        size_t tp = raw.rfind(" tag ");
        if (tp != std::string::npos) {
            value = trim(raw.substr(0, tp));
            tag = trim(raw.substr(tp + 5));
            if (tag != "paper" && tag != "derived" && tag != "trivial")
                lx.error("tag must be paper, derived or trivial");
        } else {
            value = trim(raw);
        }
        if (!doc.pair(target) && !doc.module(target))
            fail("UnresolvedName", std::to_string(sp.line) + ":" + std::to_string(sp.col) +
                                       ": unknown expectation target '" + target + "'");
        std::string printed =
            "expect " + target + "." + field + " = " + value + " tag " + tag + ";";
        doc.expectations.push_back({target, field, value, tag, sp, printed});
        doc.statement_order.push_back(printed);
    }

    DslDocument run()
    {
        while (!lx.eof()) {
            if (lx.accept_word("ring"))
                parse_ring_decl();
            else if (lx.accept_word("ideal"))
                parse_ideal_decl();
            else if (lx.accept_word("module"))
                parse_module_decl();
            else if (lx.accept_word("pair"))
                parse_pair_decl();
            else if (lx.accept_word("expect"))
                parse_expect_decl();
            else
                lx.error("statement expected (ring/ideal/module/pair/expect)");
        }
        return std::move(doc);
    }
};

} // namespace

DslDocument parse_dsl(const std::string& text)
{
    Parser p(text);
    return p.run();
}

DslDocument parse_dsl_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        fail("FileNotFound", "cannot open '" + path + "'");
    std::string text((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
    try {
        return parse_dsl(text);
    } catch (const AlgebraError& e) {
        fail(e.code(), path + ":" + e.what());
    }
}

std::string pretty_print(const DslDocument& doc)
{
    std::string out;
    for (const auto& s : doc.statement_order) {
        out += s;
        out += "\n";
    }
    return out;
}

} // namespace cmpairs
