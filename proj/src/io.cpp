#include "ssm/io.hpp"

#include "ssm/error.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>

namespace ssm {

namespace {

std::vector<Rat> coords_from_json(const Json& j) {
    std::vector<Rat> out;
    if (j.is_array()) {
        for (const auto& e : j) {
            if (e.is_string())
                out.push_back(parse_rational(e.get<std::string>()));
            else if (e.is_number_integer())
                out.push_back(Rat(e.get<long>()));
            else
                fail("ParseError", "coordinate entries must be rational strings or integers");
        }
        return out;
    }
    fail("ParseError", "expected a coordinate array");
}

// value: rational string/number, or coordinate array in the field
FieldElement element_from_json(const Json& j, const FieldPtr& field) {
    if (j.is_string()) {
        std::string s = j.get<std::string>();
        if (!s.empty() && s.front() == '[') {
            // "[c0,c1]" serialized as a string
            std::string inner = s.substr(1, s.size() - 2);
            std::vector<Rat> coords = parse_rational_list(inner);
            coords.resize(static_cast<std::size_t>(field->degree()), Rat(0));
            return field->element(std::move(coords));
        }
        return field->from_rational(parse_rational(s));
    }
    if (j.is_number_integer()) return field->from_rational(Rat(j.get<long>()));
    if (j.is_array()) {
        std::vector<Rat> coords = coords_from_json(j);
        coords.resize(static_cast<std::size_t>(field->degree()), Rat(0));
        return field->element(std::move(coords));
    }
    fail("ParseError", "expected a rational or a coordinate vector");
}

Json element_to_json(const FieldElement& e) {
    Json arr = Json::array();
    for (const Rat& c : e.coords()) arr.push_back(rational_to_string(c));
    return arr;
}

} // namespace

std::string ball_to_decimal(const RealBall& b, int digits) {
    char* s = nullptr;
    if (mpfr_asprintf(&s, "%.*Rg", digits, b.mid()) < 0) return "nan";
    std::string out(s);
    mpfr_free_str(s);
    return out;
}

FieldPtr field_from_json(const Json& j, mpfr_prec_t prec) {
    const Json& f = j.contains("field") ? j.at("field") : j;
    if (!f.contains("min_poly")) fail("ParseError", "field specification needs min_poly");
    std::vector<Int> coeffs;
    for (const auto& c : f.at("min_poly")) {
        if (c.is_number_integer()) {
            coeffs.push_back(Int(c.get<long>()));
        } else if (c.is_string()) {
            Rat q = parse_rational(c.get<std::string>());
            if (q.get_den() != 1) fail("ParseError", "min_poly entries must be integers");
            coeffs.push_back(q.get_num());
        } else {
            fail("ParseError", "min_poly entries must be integers");
        }
    }
    RootSelector sel = RootSelector::largest_real();
    if (f.contains("root")) {
        const Json& r = f.at("root");
        if (r.is_string()) {
            if (r.get<std::string>() != "largest_real")
                fail("ParseError", "root selector must be largest_real or an interval");
        } else if (r.is_object() && r.contains("interval")) {
            const Json& iv = r.at("interval");
            sel = RootSelector::interval(parse_rational(iv.at(0).get<std::string>()),
                                         parse_rational(iv.at(1).get<std::string>()));
        } else {
            fail("ParseError", "bad root selector");
        }
    }
    return NumberField::make(ZPoly(coeffs), sel, prec);
}

std::variant<Ifs, MultIndepWitness> ifs_from_json(const Json& j, mpfr_prec_t prec) {
    FieldPtr field =
        j.contains("field") ? field_from_json(j.at("field"), prec) : NumberField::rationals();

    if (!j.contains("maps") || !j.at("maps").is_array() || j.at("maps").size() < 2)
        fail("ParseError", "an IFS needs a maps array with at least two entries");
    if (!j.contains("probs")) fail("ParseError", "an IFS needs a probs array");

    std::vector<Rat> probs;
    for (const auto& p : j.at("probs")) probs.push_back(parse_rational(p.get<std::string>()));

    bool ratio_mode = j.at("maps").front().contains("ratio");
    std::vector<FieldElement> trans;
    for (const auto& m : j.at("maps")) trans.push_back(element_from_json(m.at("a"), field));

    if (ratio_mode) {
        std::vector<FieldElement> ratios;
        for (const auto& m : j.at("maps")) {
            if (!m.contains("ratio"))
                fail("ParseError", "mixed ratio/exponent map entries");
            ratios.push_back(element_from_json(m.at("ratio"), field));
        }
        int bound = j.value("exp_bound", 64);
        return build_ifs_from_ratios(std::move(ratios), std::move(trans), std::move(probs),
                                     bound);
    }

    if (!j.contains("r")) fail("ParseError", "an IFS with exponents needs the base r");
    FieldElement r = element_from_json(j.at("r"), field);
    std::vector<int> exps;
    for (const auto& m : j.at("maps")) {
        if (!m.contains("l")) fail("ParseError", "map entry needs an exponent l");
        exps.push_back(m.at("l").get<int>());
    }
    return make_ifs(field, std::move(r), std::move(exps), std::move(trans), std::move(probs));
}

Ifs ifs_from_json_checked(const Json& j, mpfr_prec_t prec) {
    auto res = ifs_from_json(j, prec);
    if (auto* w = std::get_if<MultIndepWitness>(&res))
        fail("MultiplicativelyIndependent",
             "ratios " + std::to_string(w->i) + " and " + std::to_string(w->j) +
                 " admit no common base up to exponent " + std::to_string(w->searched_bound));
    return std::get<Ifs>(std::move(res));
}

Json ifs_to_json(const Ifs& ifs) {
    Json j;
    if (ifs.field->degree() > 1) {
        Json fj;
        Json mp = Json::array();
        for (const Int& c : ifs.field->min_poly().coeffs()) mp.push_back(c.get_str());
        fj["min_poly"] = mp;
        auto iv = ifs.field->generator_interval();
        fj["root"] = {{"interval", {rational_to_string(iv.first), rational_to_string(iv.second)}}};
        j["field"] = fj;
    }
    j["r"] = element_to_json(ifs.r);
    Json maps = Json::array();
    for (int i = 0; i < ifs.k(); ++i) {
        Json m;
        m["l"] = ifs.exps[static_cast<std::size_t>(i)];
        m["a"] = element_to_json(ifs.trans[static_cast<std::size_t>(i)]);
        maps.push_back(m);
    }
    j["maps"] = maps;
    Json probs = Json::array();
    for (const Rat& p : ifs.probs) probs.push_back(rational_to_string(p));
    j["probs"] = probs;
    return j;
}

Json verdict_to_json(const Verdict& v) {
    Json j;
    j["tag"] = to_string(v.tag);
    Json cert;
    cert["kind"] = to_string(v.certificate);
    cert["note"] = v.note;
    if (v.pisot) {
        Json p;
        p["tag"] = to_string(v.pisot->tag);
        p["witness_index"] = v.pisot->witness_index;
        p["witness_modulus"] = {ball_to_decimal(v.pisot->witness_modulus.lb_ball()),
                                ball_to_decimal(v.pisot->witness_modulus.ub_ball())};
        cert["pisot"] = p;
    }
    if (v.lambda_field) {
        Json mp = Json::array();
        for (const Int& c : v.lambda_field->min_poly().coeffs()) mp.push_back(c.get_str());
        cert["lambda_min_poly"] = mp;
    }
    if (!v.subfield_coords.empty()) {
        Json arr = Json::array();
        for (const auto& e : v.subfield_coords) arr.push_back(element_to_json(e));
        cert["subfield_coords"] = arr;
    }
    if (v.ratio_sum_lb && v.ratio_sum_ub)
        cert["ratio_sum"] = {rational_to_string(*v.ratio_sum_lb),
                             rational_to_string(*v.ratio_sum_ub)};
    if (v.indep) {
        cert["independent_pair"] = {v.indep->i, v.indep->j};
        cert["search_bound"] = v.indep->searched_bound;
        cert["bound_limited"] = v.indep->bound_limited;
    }
    if (v.failing_index) cert["failing_index"] = v.failing_index;
    j["certificate"] = cert;
    return j;
}

Json gamma_to_json(const GammaWitness& w) {
    Json j;
    j["gamma"] = element_to_json(w.gamma);
    j["R"] = w.R;
    j["C"] = w.C_used;
    j["abs_gamma"] = ball_to_decimal(w.abs_gamma.ub_ball());
    j["max_conj_abs"] = ball_to_decimal(w.max_conj_abs.ub_ball());
    if (w.power >= 0) j["power"] = w.power;
    return j;
}

Json recovery_to_json(const RecoveryResult& r) {
    Json j;
    j["beta"] = element_to_json(r.beta);
    j["height"] = ball_to_decimal(r.height_bound.ub_ball());
    j["error_bound"] = ball_to_decimal(r.error_bound.ub_ball());
    j["power_shift"] = r.power_shift;
    j["residuals"] = r.residuals;
    return j;
}

Json liouville_to_json(const std::vector<LiouvilleWitness>& ws, bool exhaustive_note) {
    Json j;
    Json arr = Json::array();
    for (const auto& w : ws) {
        Json e;
        e["beta"] = element_to_json(w.beta);
        e["height"] = ball_to_decimal(w.height.ub_ball());
        e["error"] = ball_to_decimal(w.error.ub_ball());
        e["satisfies"] = w.satisfies;
        e["n"] = w.n;
        e["K"] = w.K;
        arr.push_back(e);
    }
    j["witnesses"] = arr;
    if (exhaustive_note)
        j["note"] = "an empty witness list is evidence of non-Liouville, not proof";
    return j;
}

RealExpr real_expr_from_string(const std::string& input, const FieldPtr& field) {
    // sums of atoms joined by '+'
    std::vector<std::string> parts;
    {
        std::string cur;
        int depth = 0;
        for (char c : input) {
            if (c == '[') ++depth;
            if (c == ']') --depth;
            if (c == '+' && depth == 0) {
                parts.push_back(cur);
                cur.clear();
            } else {
                cur += c;
            }
        }
        parts.push_back(cur);
    }
    RealExpr acc = RealExpr::rational(Rat(0));
    for (std::string s : parts) {
        // trim
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.erase(0, 1);
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
        if (s.empty()) continue;
        if (s == "pi") {
            acc = acc + RealExpr::pi();
        } else if (s.rfind("pi*", 0) == 0) {
            acc = acc + RealExpr::pi(parse_rational(s.substr(3)));
        } else if (s.rfind("pi/", 0) == 0) {
            acc = acc + RealExpr::pi(1 / parse_rational(s.substr(3)));
        } else if (!s.empty() && s.front() == '[') {
            std::vector<Rat> coords = parse_rational_list(s.substr(1, s.size() - 2));
            coords.resize(static_cast<std::size_t>(field->degree()), Rat(0));
            acc = acc + RealExpr::of_element(field->element(std::move(coords)));
        } else if (s.rfind("root:", 0) == 0) {
            // root:<c0,...,cd>:<lo>:<hi>
            auto p1 = s.find(':', 5);
            auto p2 = s.find(':', p1 + 1);
            if (p1 == std::string::npos || p2 == std::string::npos)
                fail("ParseError", "root atom needs root:<coeffs>:<lo>:<hi>");
            std::vector<Rat> cs = parse_rational_list(s.substr(5, p1 - 5));
            std::vector<Int> zc;
            for (const Rat& c : cs) {
                if (c.get_den() != 1) fail("ParseError", "root coefficients must be integers");
                zc.push_back(c.get_num());
            }
            Rat lo = parse_rational(s.substr(p1 + 1, p2 - p1 - 1));
            Rat hi = parse_rational(s.substr(p2 + 1));
            acc = acc + RealExpr::algebraic(ZPoly(zc), lo, hi);
        } else {
            acc = acc + RealExpr::rational(parse_rational(s));
        }
    }
    return acc;
}

std::string decay_csv(const std::vector<DecayReport>& rows) {
    std::ostringstream os;
    os << "omega,re,im,abs,radius,sum_S,bound_exp,bound_prod,C\n";
    for (const auto& r : rows) {
        os << rational_to_string(r.omega) << ',' << ball_to_decimal(r.mu_re) << ','
           << ball_to_decimal(r.mu_im) << ',' << ball_to_decimal(r.mu_hat_abs) << ','
           << ball_to_decimal(r.mu_hat_abs.rad_ball(), 6) << ',' << ball_to_decimal(r.sum_S)
           << ',' << ball_to_decimal(r.bound_exp) << ',' << ball_to_decimal(r.bound_prod) << ','
           << r.C_used << '\n';
    }
    return os.str();
}

std::string dc_csv(const std::vector<DCRow>& rows) {
    std::ostringstream os;
    os << "t,value,nearest_int,distance,counted\n";
    for (const auto& r : rows) {
        os << r.t << ',' << r.value << ',' << r.nearest.get_str() << ',' << r.distance << ','
           << (r.counted ? "true" : "false") << '\n';
    }
    return os.str();
}

std::string renewal_csv(const std::vector<Rat>& probs) {
    std::ostringstream os;
    os << "k,P_k,P_k_float\n";
    for (std::size_t k = 0; k < probs.size(); ++k)
        os << k << ',' << rational_to_string(probs[k]) << ',' << probs[k].get_d() << '\n';
    return os.str();
}

std::string decay_svg(const std::vector<DecayReport>& rows) {
    const double W = 900, H = 600, ml = 70, mr = 20, mt = 20, mb = 50;
    auto log10_clip = [](double v) { return std::log10(std::max(v, 1e-18)); };

    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    for (const auto& r : rows) {
        double x = std::log10(std::max(r.omega.get_d(), 1e-12));
        xmin = std::min(xmin, x);
        xmax = std::max(xmax, x);
        for (double v : {log10_clip(r.mu_hat_abs.ub_d()), log10_clip(r.bound_exp.ub_d()),
                         log10_clip(r.bound_prod.ub_d())}) {
            ymin = std::min(ymin, v);
            ymax = std::max(ymax, v);
        }
    }
    if (!(xmax > xmin)) xmax = xmin + 1;
    if (!(ymax > ymin)) ymax = ymin + 1;

    auto X = [&](double x) { return ml + (x - xmin) / (xmax - xmin) * (W - ml - mr); };
    auto Y = [&](double y) { return H - mb - (y - ymin) / (ymax - ymin) * (H - mt - mb); };

    std::ostringstream os;
    os << "<svg xmlns='http://www.w3.org/2000/svg' width='" << W << "' height='" << H << "'>\n";
    os << "<rect width='100%' height='100%' fill='white'/>\n";
    os << "<line x1='" << ml << "' y1='" << H - mb << "' x2='" << W - mr << "' y2='" << H - mb
       << "' stroke='black'/>\n";
    os << "<line x1='" << ml << "' y1='" << mt << "' x2='" << ml << "' y2='" << H - mb
       << "' stroke='black'/>\n";
    os << "<text x='" << W / 2 << "' y='" << H - 12 << "' font-size='14'>log10 omega</text>\n";
    os << "<text x='12' y='" << H / 2 << "' font-size='14' transform='rotate(-90 12 " << H / 2
       << ")'>log10 value</text>\n";

    auto polyline = [&](const char* color, auto getter) {
        os << "<polyline fill='none' stroke='" << color << "' stroke-width='1.5' points='";
        for (const auto& r : rows) {
            double x = std::log10(std::max(r.omega.get_d(), 1e-12));
            os << X(x) << ',' << Y(log10_clip(getter(r))) << ' ';
        }
        os << "'/>\n";
    };
    polyline("#1f77b4", [](const DecayReport& r) { return r.mu_hat_abs.ub_d(); });
    polyline("#d62728", [](const DecayReport& r) { return r.bound_exp.ub_d(); });
    polyline("#2ca02c", [](const DecayReport& r) { return r.bound_prod.ub_d(); });
    os << "<text x='" << W - 220 << "' y='30' font-size='12' fill='#1f77b4'>|mu_hat|</text>\n";
    os << "<text x='" << W - 220 << "' y='46' font-size='12' fill='#d62728'>bound_exp</text>\n";
    os << "<text x='" << W - 220 << "' y='62' font-size='12' fill='#2ca02c'>bound_prod</text>\n";
    os << "</svg>\n";
    return os.str();
}

bool validate_schema(const Json& doc, const Json& schema, std::string* err) {
    auto set_err = [&](const std::string& m) {
        if (err) *err = m;
        return false;
    };
    if (schema.contains("oneOf")) {
        for (const auto& sub : schema.at("oneOf")) {
            std::string e;
            if (validate_schema(doc, sub, &e)) return true;
        }
        return set_err("no oneOf branch matched");
    }
    if (schema.contains("enum")) {
        for (const auto& v : schema.at("enum"))
            if (doc == v) return true;
        return set_err("value not in enum");
    }
    if (schema.contains("type")) {
        std::string t = schema.at("type").get<std::string>();
        if (t == "object" && !doc.is_object()) return set_err("expected object");
        if (t == "array" && !doc.is_array()) return set_err("expected array");
        if (t == "string" && !doc.is_string()) return set_err("expected string");
        if (t == "number" && !doc.is_number()) return set_err("expected number");
        if (t == "integer" && !doc.is_number_integer()) return set_err("expected integer");
        if (t == "boolean" && !doc.is_boolean()) return set_err("expected boolean");
    }
    if (doc.is_object()) {
        if (schema.contains("required"))
            for (const auto& k : schema.at("required"))
                if (!doc.contains(k.get<std::string>()))
                    return set_err("missing required key " + k.get<std::string>());
        if (schema.contains("properties")) {
            for (auto it = schema.at("properties").begin(); it != schema.at("properties").end();
                 ++it) {
                if (doc.contains(it.key())) {
                    std::string e;
                    if (!validate_schema(doc.at(it.key()), it.value(), &e))
                        return set_err(it.key() + ": " + e);
                }
            }
        }
    }
    if (doc.is_array() && schema.contains("items")) {
        for (const auto& el : doc) {
            std::string e;
            if (!validate_schema(el, schema.at("items"), &e)) return set_err("item: " + e);
        }
    }
    return true;
}

} // namespace ssm
