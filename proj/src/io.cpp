#include "hill/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

namespace hill {

json to_json(cplx z) { return json::array({z.real(), z.imag()}); }

cplx complex_from_json(const json& j) {
    if (j.is_number()) return j.get<double>();
    if (j.is_string()) return parse_complex(j.get<std::string>());
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
        return {j[0].get<double>(), j[1].get<double>()};
    throw ConfigError("complex value must be a number, a string or [re, im]: " + j.dump());
}

Potential potential_from_json(const json& j) {
    if (!j.is_object()) throw ConfigError("potential must be a JSON object");
    if (j.contains("preset")) {
        if (!j["preset"].is_string()) throw ConfigError("\"preset\" must be a string");
        return Potential::preset(j["preset"].get<std::string>());
    }
    if (j.contains("fourier")) {
        const json& f = j["fourier"];
        if (!f.is_object()) throw ConfigError("\"fourier\" must map integer keys to [re, im]");
        std::map<int, cplx> c;
        for (auto it = f.begin(); it != f.end(); ++it) {
            std::size_t used = 0;
            int n = 0;
            try {
                n = std::stoi(it.key(), &used);
            } catch (const std::exception&) {
                used = 0;
            }
            if (used != it.key().size()) throw ConfigError("fourier key is not an integer: " + it.key());
            c[n] += complex_from_json(it.value());
        }
        return Potential::fourier(c);
    }
    if (j.contains("samples")) {
        const json& s = j["samples"];
        if (!s.is_array() || s.empty()) throw ConfigError("\"samples\" must be a non-empty array");
        std::vector<cplx> v;
        for (const json& e : s) v.push_back(complex_from_json(e));
        return Potential::sampled(v);
    }
    throw ConfigError("potential needs one of \"fourier\", \"samples\" or \"preset\"");
}

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError(path + ": " + e.what());
    }
}

Potential load_potential_file(const std::string& path) { return potential_from_json(read_json_file(path)); }

json potential_to_json(const Potential& V) {
    json j;
    j["label"] = V.label();
    json f = json::object();
    for (const auto& [n, c] : V.coefficients()) f[std::to_string(n)] = to_json(c);
    j["fourier"] = f;
    if (V.kind() == Potential::Kind::sampled) {
        json s = json::array();
        for (cplx v : V.samples()) s.push_back(to_json(v));
        j["samples"] = s;
    }
    j["mean"] = to_json(V.mean());
    return j;
}

namespace {

json points_json(const std::vector<SpectralPoint>& pts) {
    json a = json::array();
    for (const SpectralPoint& p : pts) a.push_back({{"value", to_json(p.value)}, {"multiplicity", p.multiplicity}});
    return a;
}

json fit_json(const BlowupFit& f) {
    return {{"lambda0", to_json(f.lambda0)}, {"exponent", f.exponent}, {"n_samples", f.n_samples},
            {"dist_min", f.dist_min},        {"dist_max", f.dist_max}, {"resolved", f.resolved}};
}

json trend_json(const std::array<TrendResult, 3>& t) {
    json a = json::array();
    for (const TrendResult& r : t) a.push_back({{"verdict", verdict_name(r.verdict)}, {"detail", r.detail}});
    return a;
}

json triple(const std::array<double, 3>& v) { return json::array({v[0], v[1], v[2]}); }

}  // namespace

json to_json(const SpectraCatalog& c) {
    json j;
    j["k_max"] = c.k_max;
    j["dirichlet"] = points_json(c.dirichlet);
    j["periodic"] = points_json(c.periodic);
    j["antiperiodic"] = points_json(c.antiperiodic);
    json cr = json::array();
    for (const CriticalPoint& p : c.critical)
        cr.push_back({{"delta", to_json(p.delta)}, {"gamma", to_json(p.gamma)}, {"order", p.order}});
    j["critical"] = cr;
    j["region"] = {{"re_lo", c.region.re_lo}, {"re_hi", c.region.re_hi}, {"im_lo", c.region.im_lo}, {"im_hi", c.region.im_hi}};
    j["strip"] = {{"m1", c.strip.m1}, {"m2", c.strip.m2}, {"m3", c.strip.m3}};
    return j;
}

json portrait_summary(const SpectrumPortrait& P) {
    json j;
    j["k_max"] = P.k_max;
    json arcs = json::array();
    for (const SpectralArc& a : P.arcs) {
        const auto status = [](EndStatus s) { return s == EndStatus::reached ? "reached" : "singular"; };
        arcs.push_back({{"band", a.band},
                        {"t_lo", a.samples.empty() ? a.t_lo : a.samples.front().t},
                        {"t_hi", a.samples.empty() ? a.t_hi : a.samples.back().t},
                        {"samples", a.samples.size()},
                        {"lambda_lo", to_json(a.samples.empty() ? cplx{} : a.samples.front().lambda)},
                        {"lambda_hi", to_json(a.samples.empty() ? cplx{} : a.samples.back().lambda)},
                        {"lo_status", status(a.lo_status)},
                        {"hi_status", status(a.hi_status)},
                        {"regular", a.regular},
                        {"flagged_singular", a.flagged_singular}});
    }
    j["arcs"] = arcs;
    json gaps = json::array();
    for (int k = 1; k < P.k_max; ++k) {
        const std::vector<cplx> e = gap_edges(P.catalog, k);
        if (e.empty()) continue;
        const double width = std::abs(e[1] - e[0]);
        gaps.push_back({{"k", k},
                        {"lower", to_json(e[0])},
                        {"upper", to_json(e[1])},
                        {"width", width},
                        {"open", width > 1e-6 * (1.0 + std::abs(e[0]))}});
    }
    j["gaps"] = gaps;
    json sp = json::array();
    for (const SingularPoint& s : P.singular_points) {
        sp.push_back({{"lambda", to_json(s.lambda)},
                      {"t", s.t},
                      {"bands", s.bands},
                      {"on_spectrum", s.on_spectrum},
                      {"zero_pattern", {{"disc", s.zero_pattern.disc}, {"dminus", s.zero_pattern.dminus}, {"phi", s.zero_pattern.phi}, {"ddot", s.zero_pattern.ddot}, {"holds", s.zero_pattern.holds}}},
                      {"removability_ratio", s.removability_ratio},
                      {"spectral_singularity", s.spectral_singularity}});
    }
    j["singular_points"] = sp;
    j["strip"] = {{"m1", P.strip.m1}, {"m2", P.strip.m2}, {"m3", P.strip.m3}};
    return j;
}

json to_json(const CriterionReport& r) {
    json j;
    j["verdict"] = verdict_name(r.verdict);
    j["k_max"] = r.k_max;
    j["window"] = {r.window_lo, r.window_hi};
    j["checks_agree"] = r.checks_agree;
    j["witnesses"] = r.witnesses;

    json ratios;
    ratios["sup"] = triple(r.ratios.sup);
    ratios["argmax_band"] = json::array({r.ratios.argmax_band[0], r.ratios.argmax_band[1], r.ratios.argmax_band[2]});
    ratios["excluded"] = r.ratios.excluded;
    ratios["samples"] = r.ratios.samples.size();
    json bs = json::array(), ws = json::array(), os = json::array();
    for (const auto& v : r.ratios.band_sup) bs.push_back(triple(v));
    for (const auto& v : r.ratios.window_sup) ws.push_back(triple(v));
    for (const auto& v : r.ratios.octave_sup) os.push_back(triple(v));
    ratios["band_sup"] = bs;
    ratios["window_sup"] = ws;
    ratios["octave_sup"] = os;
    j["ratios"] = ratios;

    json crit;
    crit["verdict"] = verdict_name(r.crit_check.verdict);
    json recs = json::array();
    for (const CriticalRecord& c : r.crit_check.records)
        recs.push_back({{"k", c.k},
                        {"delta", to_json(c.delta)},
                        {"distance", c.distance},
                        {"on_spectrum", c.on_spectrum},
                        {"zero_pattern", c.zero_pattern.holds},
                        {"removability_ratio", c.removability_ratio},
                        {"removable", c.removable},
                        {"ok", c.ok}});
    crit["records"] = recs;
    crit["witnesses"] = r.crit_check.witnesses;
    j["critical_points"] = crit;

    json growth;
    growth["verdict"] = verdict_name(r.growth_check.verdict);
    growth["trend"] = trend_json(r.growth_check.trend);
    json fits = json::array();
    for (const BlowupFit& f : r.growth_check.fits) fits.push_back(fit_json(f));
    growth["fits"] = fits;
    growth["witnesses"] = r.growth_check.witnesses;
    j["ratio_growth"] = growth;

    json mult;
    mult["verdict"] = verdict_name(r.mult_check.verdict);
    json mp = json::array();
    for (const MultiplePoint& m : r.mult_check.multiple_points)
        mp.push_back({{"lambda", to_json(m.lambda)},
                      {"multiplicity", m.multiplicity},
                      {"periodic", m.periodic},
                      {"dirichlet_distance", m.dirichlet_distance},
                      {"ok", m.ok}});
    mult["multiple_points"] = mp;
    mult["points_checked"] = r.mult_check.points_checked;
    json mm = json::array();
    for (const MultiplicityCheck& m : r.mult_check.mismatches)
        mm.push_back({{"t", m.t}, {"E", to_json(m.E)}, {"algebraic", m.algebraic}, {"geometric", m.geometric}});
    mult["mismatches"] = mm;
    json gaps = json::array();
    for (const GapRatio& g : r.mult_check.gaps) gaps.push_back({{"k", g.k}, {"d", g.d}, {"ratio", triple(g.ratio)}});
    mult["gaps"] = gaps;
    mult["sup"] = triple(r.mult_check.sup);
    mult["trend"] = trend_json(r.mult_check.trend);
    mult["witnesses"] = r.mult_check.witnesses;
    j["multiplicities"] = mult;

    json sing = json::array();
    for (const Singularity& s : r.singularities) sing.push_back({{"lambda", to_json(s.lambda)}, {"exponent", s.exponent}});
    j["singularities"] = sing;
    return j;
}

std::string csv_number(double v) {
    if (std::isnan(v)) return "nan";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_catalog_csv(std::ostream& os, const SpectraCatalog& c) {
    os << "kind,index,re,im,multiplicity\n";
    const auto rows = [&](const char* kind, const std::vector<SpectralPoint>& pts) {
        for (std::size_t i = 0; i < pts.size(); ++i)
            os << kind << ',' << i << ',' << csv_number(pts[i].value.real()) << ',' << csv_number(pts[i].value.imag())
               << ',' << pts[i].multiplicity << '\n';
    };
    rows("dirichlet", c.dirichlet);
    rows("periodic", c.periodic);
    rows("antiperiodic", c.antiperiodic);
    for (std::size_t i = 0; i < c.critical.size(); ++i)
        os << "critical," << i << ',' << csv_number(c.critical[i].delta.real()) << ','
           << csv_number(c.critical[i].delta.imag()) << ',' << c.critical[i].order << '\n';
}

void write_portrait_csv(std::ostream& os, const SpectrumPortrait& P) {
    os << "band,t,re,im,dre,dim,delta_dot_abs\n";
    for (const SpectralArc& a : P.arcs)
        for (const ArcSample& s : a.samples)
            os << a.band << ',' << csv_number(s.t) << ',' << csv_number(s.lambda.real()) << ','
               << csv_number(s.lambda.imag()) << ',' << csv_number(s.dlambda_dt.real()) << ','
               << csv_number(s.dlambda_dt.imag()) << ',' << csv_number(std::abs(s.delta_dot)) << '\n';
}

void write_grid_csv(std::ostream& os, const GridFunction& g) {
    os << "x,re,im\n";
    for (int j = 0; j < g.size(); ++j)
        os << csv_number(g.x(j)) << ',' << csv_number(g.values[j].real()) << ',' << csv_number(g.values[j].imag())
           << '\n';
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot write " + path);
    out << text;
}

}  // namespace hill
