#include "chiral/datum_io.hpp"

#include <array>
#include <map>
#include <sstream>

#include "chiral/errors.hpp"

namespace chiral {

namespace {

struct Lines {
    std::vector<std::string> raw;  // comment-stripped
};

Lines split_lines(const std::string& text) {
    Lines out;
    std::string line;
    std::istringstream is(text);
    while (std::getline(is, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        out.raw.push_back(line);
    }
    return out;
}

std::vector<std::string> tokens_of(const std::string& line) {
    std::vector<std::string> toks;
    std::istringstream is(line);
    std::string t;
    while (is >> t) toks.push_back(t);
    return toks;
}

bool is_blank(const std::string& line) { return tokens_of(line).empty(); }

Rational parse_rational_at(const std::string& tok, int line, int col) {
    try {
        return Rational::parse(tok);
    } catch (const std::exception&) {
        throw ParseError(line, col, "expected a rational, got '" + tok + "'");
    }
}

long parse_long_at(const std::string& tok, int line, int col) {
    try {
        size_t used = 0;
        long v = std::stol(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(tok);
        return v;
    } catch (const std::exception&) {
        throw ParseError(line, col, "expected an integer, got '" + tok + "'");
    }
}

Parity parse_parity_at(const std::string& tok, int line, int col) {
    if (tok == "even") return Parity::Even;
    if (tok == "odd") return Parity::Odd;
    throw ParseError(line, col, "parity must be 'even' or 'odd', got '" + tok + "'");
}

// `coeff t^k i j + ...`
std::vector<LaurentPoly> parse_relation_row(const std::string& line, int lineno,
                                            const std::map<std::string, size_t>& index,
                                            size_t rank) {
    std::vector<LaurentPoly> row(rank * rank);
    auto toks = tokens_of(line);
    size_t pos = 0;
    int term_no = 0;
    while (pos < toks.size()) {
        if (term_no > 0) {
            if (toks[pos] != "+")
                throw ParseError(lineno, static_cast<int>(pos + 1), "expected '+' between terms");
            ++pos;
        }
        if (pos + 3 >= toks.size())
            throw ParseError(lineno, static_cast<int>(pos + 1),
                             "relation term needs 'coeff t^k i j'");
        Rational c = parse_rational_at(toks[pos], lineno, static_cast<int>(pos + 1));
        const std::string& tpow = toks[pos + 1];
        if (tpow.rfind("t^", 0) != 0)
            throw ParseError(lineno, static_cast<int>(pos + 2),
                             "expected 't^k', got '" + tpow + "'");
        long k = parse_long_at(tpow.substr(2), lineno, static_cast<int>(pos + 2));
        auto it_i = index.find(toks[pos + 2]);
        if (it_i == index.end())
            throw ParseError(lineno, static_cast<int>(pos + 3),
                             "unknown generator '" + toks[pos + 2] + "'");
        auto it_j = index.find(toks[pos + 3]);
        if (it_j == index.end())
            throw ParseError(lineno, static_cast<int>(pos + 4),
                             "unknown generator '" + toks[pos + 3] + "'");
        row[it_i->second * rank + it_j->second] += LaurentPoly::term(c, k);
        pos += 4;
        ++term_no;
    }
    return row;
}

}  // namespace

QuadraticDatum parse_datum(const std::string& text) {
    Lines lines = split_lines(text);
    QuadraticDatum d;
    std::map<std::string, size_t> index;
    std::vector<std::vector<LaurentPoly>> rows;

    enum class Section { None, Generators, Relations } section = Section::None;
    for (size_t i = 0; i < lines.raw.size(); ++i) {
        int lineno = static_cast<int>(i + 1);
        const std::string& line = lines.raw[i];
        if (is_blank(line)) continue;
        auto toks = tokens_of(line);
        if (toks[0] == "[generators]") {
            section = Section::Generators;
            continue;
        }
        if (toks[0] == "[relations]") {
            section = Section::Relations;
            continue;
        }
        switch (section) {
            case Section::None:
                throw ParseError(lineno, 1, "content before any section header");
            case Section::Generators: {
                if (toks.size() != 4)
                    throw ParseError(lineno, 1, "generator line needs 'name degree parity weight'");
                GeneratorSpec g;
                g.name = toks[0];
                g.degree = parse_long_at(toks[1], lineno, 2);
                g.parity = parse_parity_at(toks[2], lineno, 3);
                g.weight = parse_rational_at(toks[3], lineno, 4);
                if (index.count(g.name))
                    throw ParseError(lineno, 1, "duplicate generator name '" + g.name + "'");
                index[g.name] = d.generators.size();
                d.generators.push_back(std::move(g));
                break;
            }
            case Section::Relations:
                rows.push_back(parse_relation_row(line, lineno, index, d.rank()));
                break;
        }
    }
    if (d.generators.empty()) throw ParseError(1, 1, "no [generators] section");
    d.relations = LaurentMatrix(rows.size(), d.ambient());
    for (size_t r = 0; r < rows.size(); ++r) d.relations.set_row(r, rows[r]);
    d.check_well_formed();
    return d;
}

std::string print_datum(const QuadraticDatum& d) {
    std::ostringstream os;
    os << "[generators]\n";
    for (const auto& g : d.generators)
        os << g.name << " " << g.degree << " " << (g.parity == Parity::Odd ? "odd" : "even") << " "
           << g.weight.str() << "\n";
    os << "[relations]\n";
    size_t r = d.rank();
    for (size_t row = 0; row < d.relations.rows(); ++row) {
        bool first = true;
        for (size_t i = 0; i < r; ++i)
            for (size_t j = 0; j < r; ++j) {
                const LaurentPoly& p = d.relations.at(row, d.col(i, j));
                for (const auto& [e, c] : p.coeffs()) {
                    if (!first) os << " + ";
                    first = false;
                    os << c.str() << " t^" << e << " " << d.generators[i].name << " "
                       << d.generators[j].name;
                }
            }
        if (first) os << "0 t^0 " << d.generators[0].name << " " << d.generators[0].name;
        os << "\n";
    }
    return os.str();
}

ModeAlgebraSpec parse_algebra(const std::string& text) {
    Lines lines = split_lines(text);
    std::string kind;
    std::vector<GeneratorSpec> gens;
    std::map<std::string, size_t> index;
    std::vector<std::array<std::string, 4>> bracket_lines, kappa_lines, omega_lines;
    std::vector<int> bracket_nos, kappa_nos, omega_nos;

    enum class Section { None, Algebra, Generators, Bracket, Kappa, Omega } section = Section::None;
    for (size_t i = 0; i < lines.raw.size(); ++i) {
        int lineno = static_cast<int>(i + 1);
        const std::string& line = lines.raw[i];
        if (is_blank(line)) continue;
        auto toks = tokens_of(line);
        if (toks[0] == "[algebra]") { section = Section::Algebra; continue; }
        if (toks[0] == "[generators]") { section = Section::Generators; continue; }
        if (toks[0] == "[bracket]") { section = Section::Bracket; continue; }
        if (toks[0] == "[kappa]") { section = Section::Kappa; continue; }
        if (toks[0] == "[omega]") { section = Section::Omega; continue; }
        switch (section) {
            case Section::None:
                throw ParseError(lineno, 1, "content before any section header");
            case Section::Algebra:
                if (toks.size() == 2 && toks[0] == "kind") {
                    kind = toks[1];
                } else {
                    throw ParseError(lineno, 1, "expected 'kind lie|weyl|abelian-ce'");
                }
                break;
            case Section::Generators: {
                if (toks.size() != 4)
                    throw ParseError(lineno, 1, "generator line needs 'name degree parity weight'");
                GeneratorSpec g;
                g.name = toks[0];
                g.degree = parse_long_at(toks[1], lineno, 2);
                g.parity = parse_parity_at(toks[2], lineno, 3);
                g.weight = parse_rational_at(toks[3], lineno, 4);
                if (index.count(g.name))
                    throw ParseError(lineno, 1, "duplicate generator name '" + g.name + "'");
                index[g.name] = gens.size();
                gens.push_back(std::move(g));
                break;
            }
            case Section::Bracket:
                if (toks.size() != 4) throw ParseError(lineno, 1, "bracket line needs 'a b c q'");
                bracket_lines.push_back({toks[0], toks[1], toks[2], toks[3]});
                bracket_nos.push_back(lineno);
                break;
            case Section::Kappa:
                if (toks.size() != 3) throw ParseError(lineno, 1, "kappa line needs 'a b q'");
                kappa_lines.push_back({toks[0], toks[1], toks[2], ""});
                kappa_nos.push_back(lineno);
                break;
            case Section::Omega:
                if (toks.size() != 3) throw ParseError(lineno, 1, "omega line needs 'a b q'");
                omega_lines.push_back({toks[0], toks[1], toks[2], ""});
                omega_nos.push_back(lineno);
                break;
        }
    }
    if (gens.empty()) throw ParseError(1, 1, "no [generators] section");
    size_t n = gens.size();
    auto look = [&](const std::string& name, int lineno) {
        auto it = index.find(name);
        if (it == index.end())
            throw ParseError(lineno, 1, "unknown generator '" + name + "'");
        return it->second;
    };

    std::vector<std::vector<std::vector<Rational>>> f(
        n, std::vector<std::vector<Rational>>(n, std::vector<Rational>(n)));
    bool have_f = false;
    for (size_t i = 0; i < bracket_lines.size(); ++i) {
        const auto& bl = bracket_lines[i];
        size_t a = look(bl[0], bracket_nos[i]), b = look(bl[1], bracket_nos[i]),
               c = look(bl[2], bracket_nos[i]);
        Rational q = parse_rational_at(bl[3], bracket_nos[i], 4);
        f[c][a][b] = q;
        f[c][b][a] = -q;
        have_f = true;
    }
    std::vector<std::vector<Rational>> kappa(n, std::vector<Rational>(n));
    bool have_kappa = false;
    for (size_t i = 0; i < kappa_lines.size(); ++i) {
        size_t a = look(kappa_lines[i][0], kappa_nos[i]), b = look(kappa_lines[i][1], kappa_nos[i]);
        Rational q = parse_rational_at(kappa_lines[i][2], kappa_nos[i], 3);
        kappa[a][b] = q;
        kappa[b][a] = q;
        have_kappa = true;
    }
    std::vector<std::vector<Rational>> omega(n, std::vector<Rational>(n));
    for (size_t i = 0; i < omega_lines.size(); ++i) {
        size_t a = look(omega_lines[i][0], omega_nos[i]), b = look(omega_lines[i][1], omega_nos[i]);
        Rational q = parse_rational_at(omega_lines[i][2], omega_nos[i], 3);
        omega[a][b] = q;
        bool both_odd = gens[a].total_odd() && gens[b].total_odd();
        if (a != b) omega[b][a] = both_odd ? q : -q;
    }

    if (kind == "lie")
        return ModeAlgebraSpec::affine(gens, have_f ? f : decltype(f){},
                                       have_kappa ? kappa : decltype(kappa){});
    if (kind == "weyl") return ModeAlgebraSpec::weyl(gens, omega);
    if (kind == "abelian-ce")
        return ModeAlgebraSpec::abelian_ce(gens, have_f ? f : decltype(f){},
                                           have_kappa ? kappa : decltype(kappa){});
    throw ParseError(1, 1, "unknown or missing algebra kind '" + kind + "'");
}

std::vector<FockState> parse_hom_map(const std::string& text, const Engine& target,
                                     const std::vector<std::string>& source_names) {
    Lines lines = split_lines(text);
    std::map<std::string, size_t> source_index;
    for (size_t i = 0; i < source_names.size(); ++i) source_index[source_names[i]] = i;
    std::map<std::string, size_t> target_index;
    for (size_t i = 0; i < target.rank(); ++i)
        target_index[target.spec().generators[i].name] = i;

    std::vector<FockState> out(source_names.size());
    std::vector<bool> seen(source_names.size(), false);

    bool in_map = false;
    for (size_t li = 0; li < lines.raw.size(); ++li) {
        int lineno = static_cast<int>(li + 1);
        const std::string& line = lines.raw[li];
        if (is_blank(line)) continue;
        auto toks = tokens_of(line);
        if (toks[0] == "[map]") {
            in_map = true;
            continue;
        }
        if (!in_map) throw ParseError(lineno, 1, "content before [map]");
        if (toks.size() < 3 || toks[1] != "=")
            throw ParseError(lineno, 1, "map line needs 'name = terms'");
        auto it = source_index.find(toks[0]);
        if (it == source_index.end())
            throw ParseError(lineno, 1, "unknown source generator '" + toks[0] + "'");
        if (seen[it->second]) throw ParseError(lineno, 1, "duplicate map for '" + toks[0] + "'");
        seen[it->second] = true;

        FockState v;
        size_t pos = 2;
        bool expect_term = true;
        while (pos < toks.size()) {
            if (!expect_term) {
                if (toks[pos] != "+")
                    throw ParseError(lineno, static_cast<int>(pos + 1), "expected '+'");
                ++pos;
            }
            expect_term = false;
            Rational c = parse_rational_at(toks[pos], lineno, static_cast<int>(pos + 1));
            ++pos;
            std::vector<RawMode> word;
            while (pos < toks.size() && toks[pos].front() == '[') {
                // factor written as  [name depth]  over two tokens
                std::string name = toks[pos].substr(1);
                if (name.empty())
                    throw ParseError(lineno, static_cast<int>(pos + 1), "empty mode factor");
                ++pos;
                if (pos >= toks.size() || toks[pos].back() != ']')
                    throw ParseError(lineno, static_cast<int>(pos + 1), "unterminated mode factor");
                long depth = parse_long_at(toks[pos].substr(0, toks[pos].size() - 1), lineno,
                                           static_cast<int>(pos + 1));
                if (depth < 1)
                    throw ParseError(lineno, static_cast<int>(pos + 1),
                                     "mode depth must be >= 1");
                auto git = target_index.find(name);
                if (git == target_index.end())
                    throw ParseError(lineno, static_cast<int>(pos), "unknown target generator '" +
                                                                       name + "'");
                word.push_back(RawMode{git->second, -depth});
                ++pos;
            }
            FockState term = target.normal_order(word);
            term *= c;
            v += term;
        }
        out[it->second] = v;
    }
    for (size_t i = 0; i < seen.size(); ++i)
        if (!seen[i]) throw ParseError(1, 1, "missing map for source generator '" + source_names[i] + "'");
    return out;
}

}  // namespace chiral
