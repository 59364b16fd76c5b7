#include "zhualg/uea.hpp"
#include "zhualg/linalg.hpp"
#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace zhualg::uea {

static void add_term(PBW& acc, const Word& w, const Rat& c) {
    if (c == 0) return;
    Rat& slot = acc[w];
    slot += c;
    if (slot == 0) acc.erase(w);
}

static void add_scaled(PBW& acc, const PBW& x, const Rat& c) {
    for (const auto& [w, a] : x) add_term(acc, w, a * c);
}

PBW UEA::straighten(const Word& w) const {
    auto it = straighten_cache_.find(w);
    if (it != straighten_cache_.end()) return it->second;
    PBW out;
    size_t desc = w.size();
    for (size_t i = 0; i + 1 < w.size(); ++i) {
        if (w[i] > w[i + 1]) { desc = i; break; }
    }
    if (desc == w.size()) {
        out = PBW{{w, Rat(1)}};
    } else {
        Word swapped = w;
        std::swap(swapped[desc], swapped[desc + 1]);
        out = straighten(swapped);
        // commutator term: one letter shorter
        lie::LieVec br = g_->bracket(g_->basis_vec(w[desc]), g_->basis_vec(w[desc + 1]));
        for (const auto& [b, c] : br) {
            Word shorter;
            shorter.reserve(w.size() - 1);
            shorter.insert(shorter.end(), w.begin(), w.begin() + desc);
            shorter.push_back(b);
            shorter.insert(shorter.end(), w.begin() + desc + 2, w.end());
            add_scaled(out, straighten(shorter), c);
        }
    }
    straighten_cache_[w] = out;
    return out;
}

PBW UEA::normalize(const PBW& raw) const {
    PBW out;
    for (const auto& [w, c] : raw) add_scaled(out, straighten(w), c);
    return out;
}

PBW UEA::multiply(const PBW& x, const PBW& y) const {
    PBW out;
    for (const auto& [wx, cx] : x)
        for (const auto& [wy, cy] : y) {
            Word cat = wx;
            cat.insert(cat.end(), wy.begin(), wy.end());
            add_scaled(out, straighten(cat), cx * cy);
        }
    return out;
}

PBW UEA::commutator(const PBW& x, const PBW& y) const {
    PBW out = multiply(x, y);
    add_scaled(out, multiply(y, x), Rat(-1));
    return out;
}

namespace {

// all nondecreasing words of length <= cap over [0, dim); deterministic order
void enumerate_words(int dim, int cap, Word& cur, int min_letter, std::vector<Word>& out) {
    out.push_back(cur);
    if ((int)cur.size() == cap) return;
    for (int l = min_letter; l < dim; ++l) {
        cur.push_back(l);
        enumerate_words(dim, cap, cur, l, out);
        cur.pop_back();
    }
}

} // namespace

UEA::IdealResult UEA::ideal_membership_bounded(const PBW& x, const std::vector<PBW>& gens,
                                               int cap) const {
    std::vector<Word> words;
    Word cur;
    enumerate_words(g_->dim, cap, cur, 0, words);
    if (words.size() > 300000)
        throw std::invalid_argument("degree cap too large for bounded ideal membership");
    // coordinate order: lower degree first, then lex; rows eliminate from the
    // high-degree end so remainders push into low degree
    std::sort(words.begin(), words.end(), [](const Word& a, const Word& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    });
    std::map<Word, int> index;
    for (size_t i = 0; i < words.size(); ++i) index[words[i]] = (int)(words.size() - 1 - i);

    auto to_coords = [&](const PBW& p) {
        SVec<Rat> v;
        for (const auto& [w, c] : p) {
            auto it = index.find(w);
            if (it == index.end()) throw std::invalid_argument("element exceeds degree cap");
            v[it->second] = c;
        }
        return v;
    };
    auto from_coords = [&](const SVec<Rat>& v) {
        PBW p;
        for (const auto& [i, c] : v) p[words[words.size() - 1 - i]] = c;
        return p;
    };

    SparseEchelon<Rat> ech;
    for (const auto& gen : gens) {
        size_t gdeg = 0;
        for (const auto& [w, c] : gen) gdeg = std::max(gdeg, w.size());
        for (const auto& m1 : words)
            for (const auto& m2 : words) {
                if (m1.size() + gdeg + m2.size() > (size_t)cap) continue;
                PBW row = multiply(multiply(PBW{{m1, Rat(1)}}, gen), PBW{{m2, Rat(1)}});
                ech.add(to_coords(row));
            }
    }
    IdealResult res;
    res.span_rank = ech.rank();
    SVec<Rat> rem = ech.reduce(to_coords(normalize(x)));
    res.member = rem.empty();
    res.remainder = from_coords(rem);
    return res;
}

std::string UEA::to_string(const PBW& x) const {
    if (x.empty()) return "0";
    std::vector<std::pair<Word, Rat>> terms(x.begin(), x.end());
    std::sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) {
        if (a.first.size() != b.first.size()) return a.first.size() > b.first.size();
        return a.first < b.first;
    });
    std::ostringstream os;
    bool first = true;
    for (const auto& [w, c] : terms) {
        Rat a = c;
        if (first) {
            if (a < 0) { os << "-"; a = -a; }
        } else {
            os << (a < 0 ? " - " : " + ");
            if (a < 0) a = -a;
        }
        first = false;
        if (w.empty()) {
            os << rat_str(a);
            continue;
        }
        if (a != 1) os << rat_str(a) << "*";
        for (size_t i = 0; i < w.size(); ++i) {
            if (i) os << ".";
            os << g_->labels[w[i]];
        }
    }
    return os.str();
}

namespace {

struct Tok {
    enum Kind { Plus, Minus, Star, Dot, Num, Ident, End } kind;
    std::string text;
};

std::vector<Tok> lex(const std::string& s) {
    std::vector<Tok> out;
    size_t i = 0;
    while (i < s.size()) {
        char c = s[i];
        if (isspace((unsigned char)c)) { ++i; continue; }
        if (c == '+') { out.push_back({Tok::Plus, "+"}); ++i; }
        else if (c == '-') { out.push_back({Tok::Minus, "-"}); ++i; }
        else if (c == '*') { out.push_back({Tok::Star, "*"}); ++i; }
        else if (c == '.') { out.push_back({Tok::Dot, "."}); ++i; }
        else if (isdigit((unsigned char)c)) {
            size_t j = i;
            while (j < s.size() && (isdigit((unsigned char)s[j]) || s[j] == '/')) ++j;
            out.push_back({Tok::Num, s.substr(i, j - i)});
            i = j;
        } else if (isalpha((unsigned char)c) || c == '_') {
            size_t j = i;
            while (j < s.size() && (isalnum((unsigned char)s[j]) || s[j] == '_')) ++j;
            out.push_back({Tok::Ident, s.substr(i, j - i)});
            i = j;
        } else {
            throw std::invalid_argument(std::string("unexpected character '") + c + "' in element");
        }
    }
    out.push_back({Tok::End, ""});
    return out;
}

} // namespace

PBW UEA::parse(const std::string& text) const {
    auto toks = lex(text);
    size_t pos = 0;
    PBW out;
    bool expect_term = true;
    Rat sign(1);
    while (toks[pos].kind != Tok::End) {
        if (!expect_term) {
            if (toks[pos].kind == Tok::Plus) { sign = 1; ++pos; expect_term = true; continue; }
            if (toks[pos].kind == Tok::Minus) { sign = -1; ++pos; expect_term = true; continue; }
            throw std::invalid_argument("expected '+' or '-' in element");
        }
        if (toks[pos].kind == Tok::Minus) { sign = -sign; ++pos; continue; }
        if (toks[pos].kind == Tok::Plus) { ++pos; continue; }
        Rat coeff = sign;
        Word w;
        if (toks[pos].kind == Tok::Num) {
            coeff *= parse_rat(toks[pos].text);
            ++pos;
            if (toks[pos].kind == Tok::Star) {
                ++pos;
                if (toks[pos].kind != Tok::Ident) throw std::invalid_argument("expected basis label after '*'");
            }
        }
        while (toks[pos].kind == Tok::Ident) {
            w.push_back(g_->label_index(toks[pos].text));
            ++pos;
            if (toks[pos].kind == Tok::Dot) {
                ++pos;
                if (toks[pos].kind != Tok::Ident) throw std::invalid_argument("expected basis label after '.'");
                continue;
            }
            break;
        }
        add_term(out, w, coeff);
        expect_term = false;
        sign = 1;
    }
    if (expect_term && !out.empty()) throw std::invalid_argument("dangling sign in element");
    return normalize(out);
}

} // namespace zhualg::uea
