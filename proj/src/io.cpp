#include "latrep/io.hpp"

#include <istream>
#include <limits>
#include <sstream>

namespace latrep {

namespace {

/// Whitespace tokenizer that drops '#'-to-end-of-line comments.
class Tokens {
public:
    explicit Tokens(std::istream& in) : in_(in) {}

    std::string next() {
        std::string tok;
        if (!fetch(tok)) throw InputError("unexpected end of input");
        return tok;
    }

    std::optional<std::string> peek() {
        if (!buffered_) {
            std::string tok;
            if (!fetch(tok)) return std::nullopt;
            buffer_ = tok;
            buffered_ = true;
        }
        return buffer_;
    }

    void drop() { buffered_ = false; }

private:
    bool fetch(std::string& tok) {
        if (buffered_) {
            tok = buffer_;
            buffered_ = false;
            return true;
        }
        while (in_ >> tok) {
            auto hash = tok.find('#');
            if (hash == std::string::npos) return true;
            if (hash > 0) {
                in_.ignore(std::numeric_limits<std::streamsize>::max(), '\n');
                tok = tok.substr(0, hash);
                return true;
            }
            in_.ignore(std::numeric_limits<std::streamsize>::max(), '\n');
        }
        return false;
    }

    std::istream& in_;
    std::string buffer_;
    bool buffered_ = false;
};

std::size_t parse_count(const std::string& tok) {
    try {
        long v = std::stol(tok);
        if (v < 1) throw InputError("count must be positive: " + tok);
        return static_cast<std::size_t>(v);
    } catch (const std::logic_error&) {
        throw InputError("bad count: " + tok);
    }
}

/// "key=value" with a required key.
std::string keyed_value(const std::string& tok, const std::string& key) {
    auto eq = tok.find('=');
    if (eq == std::string::npos || tok.substr(0, eq) != key)
        throw InputError("expected " + key + "=<value>, got: " + tok);
    return tok.substr(eq + 1);
}

ExactMatrix read_matrix_tokens(Tokens& toks) {
    std::size_t rows = parse_count(toks.next());
    std::size_t cols = parse_count(toks.next());
    std::vector<Rat> entries;
    entries.reserve(rows * cols);
    for (std::size_t k = 0; k < rows * cols; ++k)
        entries.push_back(parse_rational(toks.next()));
    return ExactMatrix(rows, cols, std::move(entries));
}

Lattice read_lattice_tokens(Tokens& toks) {
    if (toks.next() != "lattice") throw InputError("expected 'lattice' header");
    Int ell(keyed_value(toks.next(), "ell"));
    return Lattice(read_matrix_tokens(toks), ell);
}

BilinearForm read_form_tokens(Tokens& toks) {
    if (toks.next() != "form") throw InputError("expected 'form' header");
    std::string kind_tok = keyed_value(toks.next(), "kind");
    FormKind kind;
    if (kind_tok == "symmetric")
        kind = FormKind::symmetric;
    else if (kind_tok == "alternating")
        kind = FormKind::alternating;
    else
        throw InputError("unknown form kind: " + kind_tok);
    Int ell(keyed_value(toks.next(), "ell"));
    return BilinearForm(read_matrix_tokens(toks), kind, ell);
}

ActionFile read_action_tokens(Tokens& toks) {
    if (toks.next() != "action") throw InputError("expected 'action' header");
    std::size_t dim = parse_count(keyed_value(toks.next(), "dim"));
    std::size_t ngens = parse_count(keyed_value(toks.next(), "ngens"));
    Int ell(keyed_value(toks.next(), "ell"));
    std::vector<ExactMatrix> gens;
    gens.reserve(ngens);
    for (std::size_t k = 0; k < ngens; ++k) {
        ExactMatrix g = read_matrix_tokens(toks);
        if (g.rows() != dim || g.cols() != dim)
            throw InputError("action generator has the wrong shape");
        gens.push_back(std::move(g));
    }
    return ActionFile{GroupAction(dim, std::move(gens)), ell};
}

}  // namespace

ExactMatrix read_matrix(std::istream& in) {
    Tokens toks(in);
    return read_matrix_tokens(toks);
}

std::string matrix_text(const ExactMatrix& m) {
    std::ostringstream out;
    out << m.rows() << ' ' << m.cols() << '\n';
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (j) out << ' ';
            out << format_rational(m(i, j));
        }
        out << '\n';
    }
    return out.str();
}

Lattice read_lattice(std::istream& in) {
    Tokens toks(in);
    return read_lattice_tokens(toks);
}

std::string lattice_text(const Lattice& l) {
    return "lattice ell=" + l.ell().get_str() + "\n" + matrix_text(l.basis());
}

BilinearForm read_form(std::istream& in) {
    Tokens toks(in);
    return read_form_tokens(toks);
}

std::string form_text(const BilinearForm& f) {
    std::string kind =
        f.kind() == FormKind::symmetric ? "symmetric" : "alternating";
    return "form kind=" + kind + " ell=" + f.ell().get_str() + "\n" +
           matrix_text(f.gram());
}

ActionFile read_action(std::istream& in) {
    Tokens toks(in);
    return read_action_tokens(toks);
}

std::string action_text(const GroupAction& a, const Int& ell) {
    std::string out = "action dim=" + std::to_string(a.dim()) +
                      " ngens=" + std::to_string(a.generators().size()) +
                      " ell=" + ell.get_str() + "\n";
    for (const auto& g : a.generators()) out += matrix_text(g);
    return out;
}

ScenarioFile read_scenario(std::istream& in) {
    Tokens toks(in);
    if (toks.next() != "scenario") throw InputError("expected 'scenario' header");
    Int ell(keyed_value(toks.next(), "ell"));
    int window = 1;
    if (auto tok = toks.peek(); tok && tok->rfind("window=", 0) == 0) {
        window = static_cast<int>(parse_count(keyed_value(*tok, "window")));
        toks.drop();
    }

    std::optional<ActionFile> s_action, d_action;
    std::optional<BilinearForm> f, h;
    std::optional<Lattice> gamma;
    while (auto tok = toks.peek()) {
        if (*tok == "[s_action]") {
            toks.drop();
            s_action = read_action_tokens(toks);
        } else if (*tok == "[d_action]") {
            toks.drop();
            d_action = read_action_tokens(toks);
        } else if (*tok == "[f]") {
            toks.drop();
            f = read_form_tokens(toks);
        } else if (*tok == "[h]") {
            toks.drop();
            h = read_form_tokens(toks);
        } else if (*tok == "[gamma]") {
            toks.drop();
            gamma = read_lattice_tokens(toks);
        } else if (*tok == "[window]") {
            toks.drop();
            if (toks.next() != "layers")
                throw InputError("expected 'layers' in [window] section");
            window = static_cast<int>(parse_count(toks.next()));
        } else {
            throw InputError("unknown scenario section: " + *tok);
        }
    }
    if (!s_action || !f || !d_action)
        throw InputError("scenario needs [s_action], [f], and [d_action]");
    TensorScenario scn{std::move(s_action->action), std::move(*f),
                       std::move(d_action->action), window, ell, ""};
    if (scn.f.ell() != ell)
        throw InputError("scenario sections disagree on the prime");
    return ScenarioFile{std::move(scn), std::move(gamma), std::move(h)};
}

Json to_json(const ExactMatrix& m) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < m.cols(); ++j)
            row.push_back(format_rational(m(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

Json to_json(const DiscriminantGroup& dg) {
    return Json{{"ell", dg.ell.get_str()},
                {"valuations", dg.valuations},
                {"order_valuation", dg.order_valuation()},
                {"trivial", dg.trivial()},
                {"cyclic", dg.cyclic()}};
}

Json to_json(const CraigReport& report) {
    return Json{{"n", report.n},
                {"ell", report.ell.get_str()},
                {"pq_order_valuation", report.pq_order_valuation},
                {"pq_cyclic", report.pq_cyclic},
                {"stable_lattice_classes", report.stable_lattice_classes},
                {"perfect_symmetric_form_exists",
                 report.perfect_symmetric_form_exists},
                {"q_equals_p", report.q_equals_p},
                {"p_well_rounded", report.p_well_rounded},
                {"enum_bound", report.enum_bound}};
}

Json to_json(const WellRoundedEvidence& ev) {
    return Json{{"well_rounded", ev.well_rounded},
                {"span_dim", ev.span_dim},
                {"full_dim", ev.full_dim},
                {"commutant_dim", ev.commutant_dim},
                {"proper_stable_subspace", ev.proper_stable_subspace}};
}

Json to_json(const ScenarioCheck& check) {
    return Json{{"s_well_rounded", check.s_well_rounded},
                {"f_invariant", check.f_invariant},
                {"f_unit_perfect", check.f_unit_perfect},
                {"d_irreducible", check.d_irreducible},
                {"d_admits_perfect", check.d_admits_perfect},
                {"hypotheses_met", check.hypotheses_met}};
}

Json to_json(const TensorVerdict& verdict) {
    Json j{{"discriminant", to_json(verdict.discriminant)},
           {"t_exponent", verdict.t_exponent},
           {"e_perfect", verdict.e_perfect},
           {"jh_factor_count", verdict.jh_factor_count},
           {"factorization_ok", verdict.factorization_ok},
           {"hypotheses_met", verdict.hypotheses_met},
           {"checks", to_json(verdict.checks)}};
    if (verdict.witness) {
        j["witness"] = Json{{"z", to_json(verdict.witness->z)},
                            {"x", to_json(verdict.witness->x)},
                            {"xz", to_json(verdict.witness->xz)},
                            {"verified", verdict.witness->verified}};
    }
    return j;
}

Json to_json(const ClassificationResult& result) {
    Json classes = Json::array();
    for (const auto& cls : result.classes) {
        Json c{{"basis", to_json(cls.lattice.basis())},
               {"factors", cls.factors}};
        if (cls.gamma_factor)
            c["gamma_basis"] = to_json(cls.gamma_factor->basis());
        classes.push_back(std::move(c));
    }
    return Json{{"classes", std::move(classes)},
                {"factorization_ok", result.factorization_ok},
                {"enum_bound", result.enum_bound},
                {"note", "verified within window"}};
}

Json to_json(const PairingSpaceResult& result) {
    Json basis = Json::array();
    for (const auto& b : result.basis) basis.push_back(to_json(b));
    Json factors = Json::array();
    for (const auto& h : result.h_factors) factors.push_back(to_json(h));
    return Json{{"dimension", result.basis.size()},
                {"basis", std::move(basis)},
                {"d_side_dimension", result.d_side_dim},
                {"all_factor", result.all_factor},
                {"h_factors", std::move(factors)}};
}

namespace {

void render_value(std::string& out, const Json& v, int depth);

void render_object(std::string& out, const Json& obj, int depth) {
    for (const auto& [key, value] : obj.items()) {
        out.append(2 * depth, ' ');
        out += "- **" + key + "**: ";
        if (value.is_object() || value.is_array()) {
            out += '\n';
            render_value(out, value, depth + 1);
        } else {
            out += value.is_string() ? value.get<std::string>() : value.dump();
            out += '\n';
        }
    }
}

void render_value(std::string& out, const Json& v, int depth) {
    if (v.is_object()) {
        render_object(out, v, depth);
    } else if (v.is_array()) {
        bool scalar = true;
        for (const auto& item : v)
            if (item.is_object() || item.is_array()) scalar = false;
        if (scalar) {
            out.append(2 * depth, ' ');
            out += "- " + v.dump() + "\n";
        } else {
            for (const auto& item : v) render_value(out, item, depth);
        }
    } else {
        out.append(2 * depth, ' ');
        out += "- " + (v.is_string() ? v.get<std::string>() : v.dump()) + "\n";
    }
}

}  // namespace

std::string json_to_markdown(const Json& j) {
    std::string out = "# latrep report\n\n";
    render_value(out, j, 0);
    return out;
}

}  // namespace latrep
