#include "flimsim/io.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "flimsim/errors.hpp"

namespace flimsim {

namespace {

std::string fmt(double x, const char* spec = "%.10g") {
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    std::array<char, 64> buf{};
    std::snprintf(buf.data(), buf.size(), spec, x);
    return buf.data();
}

std::uint32_t rotl(std::uint32_t v, int s) { return (v << s) | (v >> (32 - s)); }

}  // namespace

std::string sha1_hex(std::string_view data) {
    std::uint32_t h0 = 0x67452301u, h1 = 0xEFCDAB89u, h2 = 0x98BADCFEu, h3 = 0x10325476u, h4 = 0xC3D2E1F0u;

    std::string msg(data);
    const std::uint64_t bit_len = static_cast<std::uint64_t>(msg.size()) * 8;
    msg.push_back(static_cast<char>(0x80));
    while (msg.size() % 64 != 56) msg.push_back('\0');
    for (int i = 7; i >= 0; --i) msg.push_back(static_cast<char>((bit_len >> (8 * i)) & 0xFF));

    std::array<std::uint32_t, 80> w{};
    for (std::size_t chunk = 0; chunk < msg.size(); chunk += 64) {
        for (int t = 0; t < 16; ++t)
            w[t] = (static_cast<std::uint32_t>(static_cast<unsigned char>(msg[chunk + 4 * t])) << 24) |
                   (static_cast<std::uint32_t>(static_cast<unsigned char>(msg[chunk + 4 * t + 1])) << 16) |
                   (static_cast<std::uint32_t>(static_cast<unsigned char>(msg[chunk + 4 * t + 2])) << 8) |
                   static_cast<std::uint32_t>(static_cast<unsigned char>(msg[chunk + 4 * t + 3]));
        for (int t = 16; t < 80; ++t) w[t] = rotl(w[t - 3] ^ w[t - 8] ^ w[t - 14] ^ w[t - 16], 1);

        std::uint32_t a = h0, b = h1, c = h2, d = h3, e = h4;
        for (int t = 0; t < 80; ++t) {
            std::uint32_t f = 0, k = 0;
            if (t < 20) {
                f = (b & c) | (~b & d);
                k = 0x5A827999u;
            } else if (t < 40) {
                f = b ^ c ^ d;
                k = 0x6ED9EBA1u;
            } else if (t < 60) {
                f = (b & c) | (b & d) | (c & d);
                k = 0x8F1BBCDCu;
            } else {
                f = b ^ c ^ d;
                k = 0xCA62C1D6u;
            }
            const std::uint32_t tmp = rotl(a, 5) + f + e + k + w[t];
            e = d;
            d = c;
            c = rotl(b, 30);
            b = a;
            a = tmp;
        }
        h0 += a;
        h1 += b;
        h2 += c;
        h3 += d;
        h4 += e;
    }

    std::array<char, 41> out{};
    std::snprintf(out.data(), out.size(), "%08x%08x%08x%08x%08x", h0, h1, h2, h3, h4);
    return out.data();
}

std::string abep_csv(const AbepCurve& curve) {
    std::string s = "eb_n0_db,abep,bit_errors,bits_sent,repair_rate\n";
    for (const auto& p : curve.points) {
        s += fmt(p.eb_n0_db);
        s += ',';
        s += fmt(p.abep, "%.10e");
        s += ',';
        s += std::to_string(p.bit_errors);
        s += ',';
        s += std::to_string(p.bits_sent);
        s += ',';
        s += fmt(p.repair_rate, "%.10e");
        s += '\n';
    }
    return s;
}

std::string cn_csv(const CnMap& map) {
    std::string s = "r_cm,omega_deg,cn_db\n";
    for (const auto& g : map.grid) {
        s += fmt(g.r_cm);
        s += ',';
        s += fmt(g.omega_deg);
        s += ',';
        s += fmt(g.cn_db);
        s += '\n';
    }
    return s;
}

std::string codebook_json(const Codebook& cb) {
    nlohmann::json j;
    j["scheme"] = scheme_name(cb.scheme);
    j["n_t"] = cb.n_t;
    j["pam_order"] = cb.pam_order;
    j["n_active"] = cb.n_active;
    j["i_lower_ma"] = cb.i_lower_ma;
    j["i_upper_ma"] = cb.i_upper_ma;
    j["zero_level_ma"] = cb.zero_level_ma;
    j["universe_size"] = cb.universe_size;
    j["n_bits"] = cb.n_bits;
    j["vectors_ma"] = cb.vectors;
    std::vector<std::string> labels;
    labels.reserve(cb.size());
    for (std::size_t t = 0; t < cb.size(); ++t) labels.push_back(cb.label_bits(t));
    j["labels"] = labels;
    return j.dump(2) + "\n";
}

Codebook codebook_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("codebook JSON: ") + e.what());
    }
    Codebook cb;
    try {
        cb.scheme = scheme_from_name(j.at("scheme").get<std::string>());
        cb.n_t = j.at("n_t").get<int>();
        cb.pam_order = j.at("pam_order").get<int>();
        cb.n_active = j.at("n_active").get<int>();
        cb.i_lower_ma = j.at("i_lower_ma").get<double>();
        cb.i_upper_ma = j.at("i_upper_ma").get<double>();
        cb.zero_level_ma = j.at("zero_level_ma").get<double>();
        cb.universe_size = j.at("universe_size").get<std::size_t>();
        cb.n_bits = j.at("n_bits").get<int>();
        cb.vectors = j.at("vectors_ma").get<std::vector<std::vector<double>>>();
        const auto labels = j.at("labels").get<std::vector<std::string>>();
        if (labels.size() != cb.vectors.size())
            throw ValidationError("codebook JSON: label count does not match vector count");
        cb.labels.reserve(labels.size());
        for (const auto& bits : labels) {
            if (static_cast<int>(bits.size()) != cb.n_bits)
                throw ValidationError("codebook JSON: label width does not match n_bits");
            std::uint32_t v = 0;
            for (char ch : bits) {
                if (ch != '0' && ch != '1') throw ValidationError("codebook JSON: label is not a bit string");
                v = (v << 1) | static_cast<std::uint32_t>(ch - '0');
            }
            cb.labels.push_back(v);
        }
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("codebook JSON: ") + e.what());
    }
    const std::size_t c = cb.vectors.size();
    if (c == 0 || (c & (c - 1)) != 0) throw ValidationError("codebook JSON: vector count must be a power of two");
    for (const auto& v : cb.vectors)
        if (static_cast<int>(v.size()) != cb.n_t) throw ValidationError("codebook JSON: vector length != n_t");
    cb.index_of_label.assign(c, 0);
    std::vector<char> seen(c, 0);
    for (std::size_t t = 0; t < c; ++t) {
        const std::uint32_t l = cb.labels[t];
        if (l >= c || seen[l]) throw ValidationError("codebook JSON: labels are not a bijection");
        seen[l] = 1;
        cb.index_of_label[l] = static_cast<std::uint32_t>(t);
    }
    return cb;
}

namespace {

nlohmann::json scene_json(const SceneConfig& sc) {
    nlohmann::json j;
    j["n_t"] = sc.n_t;
    j["n_r"] = sc.n_r;
    j["led_separation_cm"] = sc.led_separation_cm;
    j["pd_separation_cm"] = sc.pd_separation_cm;
    j["h_lum_cm"] = sc.h_lum_cm;
    j["h_ue_cm"] = sc.h_ue_cm;
    j["semi_angle_deg"] = sc.semi_angle_deg;
    j["fov_half_deg"] = sc.fov_half_deg;
    j["area_cm2"] = sc.area_cm2;
    j["ue_radius_cm"] = sc.ue_radius_cm;
    j["ue_angle_deg"] = sc.ue_angle_rad * 180.0 / M_PI;
    j["receiver"] = sc.receiver_kind == ReceiverKind::Square ? "square" : "square_perturbed";
    auto pairs = nlohmann::json::array();
    for (const auto& [p, a] : sc.perturb_angles_deg) pairs.push_back({p, a});
    j["perturb_angles_deg"] = pairs;
    return j;
}

}  // namespace

std::string config_json(const RunConfig& cfg) {
    nlohmann::json j;
    j["scene"] = scene_json(cfg.scene);
    auto schemes = nlohmann::json::array();
    for (const auto& sch : cfg.schemes) {
        nlohmann::json s;
        s["name"] = scheme_name(sch.scheme);
        s["M"] = sch.pam_order;
        if (sch.n_active) s["n_a"] = *sch.n_active;
        s["i_lower_ma"] = sch.i_lower_ma;
        s["i_upper_ma"] = sch.i_upper_ma;
        s["subset"] = subset_strategy_name(sch.subset);
        s["labels"] = sch.labels ? label_strategy_name(*sch.labels) : "auto";
        s["design_ref_ebn0_db"] = sch.design_ref_ebn0_db;
        schemes.push_back(s);
    }
    j["schemes"] = schemes;
    j["detector"]["kind"] = cfg.detector.kind == DetectorSpec::Kind::Ml ? "ml" : "mmse";
    j["detector"]["rs"] = cfg.detector.centered_rs ? "centered" : "raw";
    j["sim"]["seed"] = cfg.sim.seed;
    j["sim"]["n_symbols"] = cfg.sim.n_symbols;
    j["sim"]["snr_db"] = cfg.sim.snr_grid_db;
    j["sim"]["early_stop_errors"] = cfg.sim.early_stop_errors;
    j["sim"]["workers"] = cfg.sim.workers;
    j["output"]["dir"] = cfg.output.dir;
    return j.dump(2) + "\n";
}

std::string manifest_json(const RunConfig& cfg, const std::string& command,
                          const std::vector<std::pair<std::string, std::string>>& codebook_hashes,
                          const std::vector<std::string>& outputs, bool analytic) {
    nlohmann::json j;
    j["command"] = command;
    j["seed"] = cfg.sim.seed;
    j["analytic"] = analytic;
    j["config"] = nlohmann::json::parse(config_json(cfg));
    auto hashes = nlohmann::json::object();
    for (const auto& [scheme, hash] : codebook_hashes) hashes[scheme] = hash;
    j["codebook_sha1"] = hashes;
    j["outputs"] = outputs;
    return j.dump(2) + "\n";
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ValidationError("cannot open '" + path + "' for writing");
    f << content;
    if (!f) throw ValidationError("failed writing '" + path + "'");
}

std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw ParseError("cannot open '" + path + "'");
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

}  // namespace flimsim
