#include "flimsim/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

#include "flimsim/channel.hpp"
#include "flimsim/errors.hpp"

namespace flimsim {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

double parse_double(const std::string& v, int line) {
    std::size_t pos = 0;
    double x = 0.0;
    try {
        x = std::stod(v, &pos);
    } catch (const std::exception&) {
        throw ParseError("line " + std::to_string(line) + ": not a number: '" + v + "'");
    }
    if (pos != v.size()) throw ParseError("line " + std::to_string(line) + ": trailing junk in number: '" + v + "'");
    return x;
}

std::int64_t parse_int(const std::string& v, int line) {
    const double x = parse_double(v, line);
    if (x != std::floor(x)) throw ParseError("line " + std::to_string(line) + ": expected an integer, got '" + v + "'");
    return static_cast<std::int64_t>(x);
}

// "a:step:b" inclusive range or comma-separated list
std::vector<double> parse_grid(const std::string& v, int line) {
    std::vector<double> out;
    if (v.find(':') != std::string::npos) {
        std::vector<std::string> parts;
        std::stringstream ss(v);
        std::string tok;
        while (std::getline(ss, tok, ':')) parts.push_back(trim(tok));
        if (parts.size() != 3) throw ParseError("line " + std::to_string(line) + ": range needs start:step:stop");
        const double a = parse_double(parts[0], line);
        const double step = parse_double(parts[1], line);
        const double b = parse_double(parts[2], line);
        if (!(step > 0.0)) throw ParseError("line " + std::to_string(line) + ": range step must be positive");
        for (double x = a; x <= b + 1e-9; x += step) out.push_back(x);
        return out;
    }
    std::stringstream ss(v);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        tok = trim(tok);
        if (!tok.empty()) out.push_back(parse_double(tok, line));
    }
    return out;
}

// "p a, p a, ..." polar/azimuth pairs in degrees
std::vector<std::pair<double, double>> parse_angle_pairs(const std::string& v, int line) {
    std::vector<std::pair<double, double>> out;
    std::stringstream ss(v);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        tok = trim(tok);
        if (tok.empty()) continue;
        std::stringstream ps(tok);
        double p = 0.0, a = 0.0;
        if (!(ps >> p >> a)) throw ParseError("line " + std::to_string(line) + ": angle pair needs 'polar azimuth'");
        std::string rest;
        if (ps >> rest) throw ParseError("line " + std::to_string(line) + ": trailing junk in angle pair");
        out.emplace_back(p, a);
    }
    return out;
}

SubsetStrategy parse_subset(const std::string& v, int line) {
    if (v == "maxmin") return SubsetStrategy::MaxMinDistance;
    if (v == "exhaustive") return SubsetStrategy::ExhaustiveUnionBound;
    if (v == "all") return SubsetStrategy::All;
    throw ParseError("line " + std::to_string(line) + ": subset must be maxmin|exhaustive|all");
}

std::optional<LabelStrategy> parse_labels(const std::string& v, int line) {
    if (v == "auto") return std::nullopt;
    if (v == "gray") return LabelStrategy::GrayPerLed;
    if (v == "mindist") return LabelStrategy::MinDistMaxHamming;
    if (v == "unionbound") return LabelStrategy::UnionBoundSearch;
    throw ParseError("line " + std::to_string(line) + ": labels must be auto|gray|mindist|unionbound");
}

}  // namespace

RunConfig default_config() {
    RunConfig cfg;
    cfg.scene.perturb_angles_deg = {{-5.0, 6.0}, {-8.0, 1.0}, {-10.0, 2.0}, {15.0, 1.0}};
    cfg.schemes.push_back(SchemeConfig{});
    return cfg;
}

RunConfig parse_config_text(const std::string& text) {
    RunConfig cfg = default_config();
    cfg.schemes.clear();

    std::istringstream in(text);
    std::string raw;
    std::string section;
    int line = 0;
    bool scene_perturb_set = false;

    while (std::getline(in, raw)) {
        ++line;
        std::string s = raw;
        const auto hash = s.find_first_of("#;");
        if (hash != std::string::npos) s = s.substr(0, hash);
        s = trim(s);
        if (s.empty()) continue;

        if (s.front() == '[') {
            if (s.back() != ']') throw ParseError("line " + std::to_string(line) + ": unterminated section header");
            section = trim(s.substr(1, s.size() - 2));
            if (section == "scheme") cfg.schemes.push_back(SchemeConfig{});
            else if (section != "scene" && section != "detector" && section != "sim" && section != "output")
                throw ParseError("line " + std::to_string(line) + ": unknown section [" + section + "]");
            continue;
        }

        const auto eq = s.find('=');
        if (eq == std::string::npos) throw ParseError("line " + std::to_string(line) + ": expected key=value");
        const std::string key = trim(s.substr(0, eq));
        const std::string val = trim(s.substr(eq + 1));
        if (section.empty()) throw ParseError("line " + std::to_string(line) + ": key '" + key + "' outside a section");

        if (section == "scene") {
            auto& sc = cfg.scene;
            if (key == "n_t") sc.n_t = static_cast<int>(parse_int(val, line));
            else if (key == "n_r") sc.n_r = static_cast<int>(parse_int(val, line));
            else if (key == "led_separation_cm") sc.led_separation_cm = parse_double(val, line);
            else if (key == "pd_separation_cm") sc.pd_separation_cm = parse_double(val, line);
            else if (key == "h_lum_cm") sc.h_lum_cm = parse_double(val, line);
            else if (key == "h_ue_cm") sc.h_ue_cm = parse_double(val, line);
            else if (key == "semi_angle_deg") sc.semi_angle_deg = parse_double(val, line);
            else if (key == "fov_half_deg") sc.fov_half_deg = parse_double(val, line);
            else if (key == "area_cm2") sc.area_cm2 = parse_double(val, line);
            else if (key == "ue_radius_cm") sc.ue_radius_cm = parse_double(val, line);
            else if (key == "ue_angle_deg") sc.ue_angle_rad = parse_double(val, line) * M_PI / 180.0;
            else if (key == "receiver") {
                if (val == "square") sc.receiver_kind = ReceiverKind::Square;
                else if (val == "square_perturbed") sc.receiver_kind = ReceiverKind::SquarePerturbed;
                else throw ParseError("line " + std::to_string(line) + ": receiver must be square|square_perturbed");
            } else if (key == "perturb_angles_deg") {
                sc.perturb_angles_deg = parse_angle_pairs(val, line);
                scene_perturb_set = true;
            } else
                throw ParseError("line " + std::to_string(line) + ": unknown scene key '" + key + "'");
        } else if (section == "scheme") {
            auto& sch = cfg.schemes.back();
            if (key == "name") sch.scheme = scheme_from_name(val);
            else if (key == "M") sch.pam_order = static_cast<int>(parse_int(val, line));
            else if (key == "n_a") sch.n_active = static_cast<int>(parse_int(val, line));
            else if (key == "i_lower_ma") sch.i_lower_ma = parse_double(val, line);
            else if (key == "i_upper_ma") sch.i_upper_ma = parse_double(val, line);
            else if (key == "subset") sch.subset = parse_subset(val, line);
            else if (key == "labels") sch.labels = parse_labels(val, line);
            else if (key == "design_ref_ebn0_db") sch.design_ref_ebn0_db = parse_double(val, line);
            else throw ParseError("line " + std::to_string(line) + ": unknown scheme key '" + key + "'");
        } else if (section == "detector") {
            if (key == "kind") {
                if (val == "ml") cfg.detector.kind = DetectorSpec::Kind::Ml;
                else if (val == "mmse") cfg.detector.kind = DetectorSpec::Kind::Mmse;
                else throw ParseError("line " + std::to_string(line) + ": detector kind must be ml|mmse");
            } else if (key == "rs") {
                if (val == "raw") cfg.detector.centered_rs = false;
                else if (val == "centered") cfg.detector.centered_rs = true;
                else throw ParseError("line " + std::to_string(line) + ": rs must be raw|centered");
            } else
                throw ParseError("line " + std::to_string(line) + ": unknown detector key '" + key + "'");
        } else if (section == "sim") {
            if (key == "seed") cfg.sim.seed = static_cast<std::uint64_t>(parse_int(val, line));
            else if (key == "n_symbols") cfg.sim.n_symbols = parse_int(val, line);
            else if (key == "snr_db") cfg.sim.snr_grid_db = parse_grid(val, line);
            else if (key == "early_stop_errors") cfg.sim.early_stop_errors = parse_int(val, line);
            else if (key == "workers") cfg.sim.workers = static_cast<int>(parse_int(val, line));
            else throw ParseError("line " + std::to_string(line) + ": unknown sim key '" + key + "'");
        } else if (section == "output") {
            if (key == "dir") cfg.output.dir = val;
            else throw ParseError("line " + std::to_string(line) + ": unknown output key '" + key + "'");
        }
    }

    if (cfg.schemes.empty()) cfg.schemes = default_config().schemes;
    if (cfg.scene.receiver_kind == ReceiverKind::SquarePerturbed && !scene_perturb_set &&
        static_cast<int>(cfg.scene.perturb_angles_deg.size()) != cfg.scene.n_r)
        cfg.scene.perturb_angles_deg = default_config().scene.perturb_angles_deg;

    validate(cfg);
    return cfg;
}

RunConfig parse_config(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ParseError("cannot open config file '" + path + "'");
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_config_text(ss.str());
}

void validate(const RunConfig& cfg) {
    const auto& sc = cfg.scene;
    auto square = [](int n) {
        const int k = static_cast<int>(std::lround(std::sqrt(static_cast<double>(n))));
        return n >= 1 && k * k == n;
    };
    if (!square(sc.n_t)) throw ValidationError("scene.n_t must be a perfect square, got " + std::to_string(sc.n_t));
    if (!square(sc.n_r)) throw ValidationError("scene.n_r must be a perfect square, got " + std::to_string(sc.n_r));
    if (!(sc.led_separation_cm > 0.0)) throw ValidationError("scene.led_separation_cm must be positive");
    if (!(sc.pd_separation_cm > 0.0)) throw ValidationError("scene.pd_separation_cm must be positive");
    if (!(sc.h_lum_cm > sc.h_ue_cm)) throw ValidationError("scene.h_lum_cm must exceed scene.h_ue_cm");
    if (!(sc.semi_angle_deg > 0.0 && sc.semi_angle_deg < 90.0))
        throw ValidationError("scene.semi_angle_deg must lie in (0, 90)");
    if (!(sc.fov_half_deg > 0.0 && sc.fov_half_deg <= 90.0))
        throw ValidationError("scene.fov_half_deg must lie in (0, 90]");
    if (!(sc.area_cm2 > 0.0)) throw ValidationError("scene.area_cm2 must be positive");
    if (sc.ue_angle_rad < 0.0 || sc.ue_angle_rad >= 2.0 * M_PI)
        throw ValidationError("scene.ue_angle_deg must lie in [0, 360)");
    const double r_cell = cell_radius(sc.h_lum_cm, sc.h_ue_cm, lambertian_mode(sc.semi_angle_deg));
    if (sc.ue_radius_cm < 0.0 || sc.ue_radius_cm > r_cell + 1e-9)
        throw ValidationError("scene.ue_radius_cm must lie in [0, R_cell=" + std::to_string(r_cell) + "]");
    if (sc.receiver_kind == ReceiverKind::SquarePerturbed &&
        static_cast<int>(sc.perturb_angles_deg.size()) != sc.n_r)
        throw ValidationError("scene.perturb_angles_deg needs one (polar, azimuth) pair per PD");

    for (const auto& sch : cfg.schemes) {
        if (sch.pam_order < 1) throw ValidationError("scheme.M must be >= 1");
        if (!(sch.i_lower_ma > 0.0) || !(sch.i_lower_ma < sch.i_upper_ma))
            throw ValidationError("scheme drive currents need 0 < i_lower_ma < i_upper_ma");
        if (sch.scheme == Scheme::GSM2) {
            if (!sch.n_active) throw ValidationError("scheme gsm2 requires n_a");
            if (*sch.n_active < 1 || *sch.n_active > sc.n_t)
                throw ValidationError("scheme.n_a must lie in [1, n_t]");
        }
    }

    if (cfg.sim.n_symbols < 1) throw ValidationError("sim.n_symbols must be >= 1");
    if (cfg.sim.early_stop_errors < 0) throw ValidationError("sim.early_stop_errors must be >= 0");
    if (cfg.sim.workers < 0) throw ValidationError("sim.workers must be >= 0");
    if (cfg.sim.snr_grid_db.empty()) throw ValidationError("sim.snr_db must not be empty");
    for (std::size_t i = 1; i < cfg.sim.snr_grid_db.size(); ++i)
        if (!(cfg.sim.snr_grid_db[i] > cfg.sim.snr_grid_db[i - 1]))
            throw ValidationError("sim.snr_db must be strictly increasing");
    if (cfg.output.dir.empty()) throw ValidationError("output.dir must not be empty");
}

std::string subset_strategy_name(SubsetStrategy s) {
    switch (s) {
        case SubsetStrategy::All: return "all";
        case SubsetStrategy::MaxMinDistance: return "maxmin";
        case SubsetStrategy::ExhaustiveUnionBound: return "exhaustive";
    }
    return "?";
}

std::string label_strategy_name(LabelStrategy s) {
    switch (s) {
        case LabelStrategy::GrayPerLed: return "gray";
        case LabelStrategy::MinDistMaxHamming: return "mindist";
        case LabelStrategy::UnionBoundSearch: return "unionbound";
    }
    return "?";
}

}  // namespace flimsim
