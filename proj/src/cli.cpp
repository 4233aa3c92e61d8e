/* Copyright (C) 2026 the qdyn authors.
 * This program is Licensed under the Apache License, Version 2.0
 * (the "License"); you may not use this file except in compliance
 * with the License. You may obtain a copy of the License at
 *   http://www.apache.org/licenses/LICENSE-2.0
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 */
#include "qdyn/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <ostream>

#include "qdyn/classfield.hpp"
#include "qdyn/dynamics.hpp"
#include "qdyn/errors.hpp"
#include "qdyn/factorize.hpp"
#include "qdyn/isogeny.hpp"
#include "qdyn/resultants.hpp"
#include "qdyn/tmap.hpp"

namespace qdyn {

using json = nlohmann::ordered_json;

namespace {

constexpr std::uint64_t kIsogenyPrimeA = 576460752303423649ULL;
constexpr std::uint64_t kIsogenyPrimeB = 576460752303423737ULL;
constexpr int kIsogenyTrials = 200;
constexpr int kBranchSuiteCount = 100;

void RunConfigValidate(const RunConfig& cfg) {
    if (cfg.precision < 16 || cfg.precision > 256)
        throw domain_error("precision must lie in [16, 256]");
    if (cfg.nmax < 1 || cfg.nmax > 4)
        throw domain_error("nmax must lie in [1, 4]");
    if (cfg.format != "text" && cfg.format != "json")
        throw domain_error("format must be text or json");
}

std::string effective_cache_dir(const RunConfig& cfg) {
    if (!cfg.cache_dir.empty()) return cfg.cache_dir;
    if (const char* env = std::getenv("QDYN_CACHE_DIR"))
        if (*env) return env;
    return ".qdyn-cache";
}

// generic deterministic text rendering of the document
void render_text(const json& v, std::ostream& out, const std::string& prefix) {
    if (v.is_object()) {
        for (const auto& [key, val] : v.items()) {
            std::string path = prefix.empty() ? key : prefix + "." + key;
            render_text(val, out, path);
        }
    } else if (v.is_array()) {
        size_t i = 0;
        for (const auto& val : v) {
            render_text(val, out, prefix + "[" + std::to_string(i) + "]");
            ++i;
        }
        if (v.empty()) out << prefix << " = []\n";
    } else {
        out << prefix << " = ";
        if (v.is_string())
            out << v.get<std::string>();
        else
            out << v.dump();
        out << "\n";
    }
}

void emit(const json& doc, const RunConfig& cfg, std::ostream& out) {
    if (cfg.format == "json")
        out << doc.dump(2) << "\n";
    else
        render_text(doc, out, "");
}

json poly_json(const IntPoly& p) {
    json j;
    j["degree"] = p.degree();
    j["coeffs"] = write_poly_line(p);
    return j;
}

// ---- pipeline helpers shared by the factor/label/orbit commands ---------

struct LabeledFactor {
    IntPoly factor;          // irreducible factor of the plain family
    IntPoly tilde;           // primitive part of factor(2x)
    bool exceptional = false;  // the linear pieces x and x+1 at level 1
    std::int64_t d = 0;
    int h = 0;
    std::vector<std::uint64_t> witness_primes;
};

std::vector<LabeledFactor> factor_level(ResultantPipeline& pipe, int n,
                                        bool with_labels) {
    IntPoly pn = pipe.Pn(n);
    auto factors = factor_squarefree_over_Z(pn);
    std::vector<LabeledFactor> out;
    IntPoly tilde_product({1});
    for (const auto& g : factors) {
        LabeledFactor lf;
        lf.factor = g;
        lf.tilde = g.scale_arg(2).primitive_part();
        tilde_product = tilde_product * lf.tilde;
        if (g.degree() == 1) {
            lf.exceptional = true;  // x and x+1 carry the two designated points
        } else if (with_labels) {
            LabelWitness w = label_factor_discriminant(g, n);
            lf.d = w.d;
            lf.h = w.h;
            lf.witness_primes = w.split_primes;
        }
        out.push_back(std::move(lf));
    }
    if (tilde_product != pipe.Pn_tilde(n))
        throw integrity_error("rescaled factor product mismatch");
    return out;
}

json labeled_factor_json(const LabeledFactor& lf) {
    json j;
    j["degree"] = lf.factor.degree();
    j["coeffs"] = write_poly_line(lf.factor);
    j["tilde_coeffs"] = write_poly_line(lf.tilde);
    if (lf.exceptional) {
        j["label"] = "exceptional";
    } else if (lf.d) {
        j["label_d"] = lf.d;
        j["class_number"] = lf.h;
        j["witness_primes"] = lf.witness_primes;
    }
    return j;
}

// orbits with factor matching and (optionally) labels
json orbits_json(ResultantPipeline& pipe, const RunConfig& cfg, int n,
                 bool with_labels) {
    auto labeled = factor_level(pipe, n, with_labels);
    std::vector<IntPoly> tilde_factors;
    for (const auto& lf : labeled) tilde_factors.push_back(lf.tilde);
    auto orbits = assemble_orbits(n, cfg.precision, cfg.threads);
    json jorbits = json::array();
    long point_count = 0;
    std::vector<int> factor_points(labeled.size(), 0);
    for (auto& orbit : orbits) {
        int fi = match_orbit_to_factor(orbit, tilde_factors);
        orbit.matched_factor = fi;
        if (with_labels && !labeled[fi].exceptional)
            orbit.discriminant_label = static_cast<int>(labeled[fi].d);
        factor_points[fi] += orbit.period;
        point_count += orbit.period;
        json jo;
        jo["period"] = orbit.period;
        json res = json::array();
        for (const auto& r : orbit.residue_cycle) res.push_back(r.bits());
        jo["residues"] = res;
        json pts = json::array();
        for (const auto& z : orbit.lifted_cycle) pts.push_back(z.serialize());
        jo["points"] = pts;
        jo["matched_factor"] = fi;
        if (orbit.discriminant_label) jo["label_d"] = orbit.discriminant_label;
        jorbits.push_back(std::move(jo));
    }
    long expected = 0;
    for (int k : divisors(n)) expected += mobius(n / k) * (1L << (2 * k));
    if (n == 1) expected = 3;
    json doc;
    doc["period"] = n;
    doc["orbit_count"] = orbits.size();
    doc["point_count"] = point_count;
    doc["expected_point_count"] = expected;
    if (point_count != expected)
        throw integrity_error("orbit census does not match the divisor sum");
    json jf = json::array();
    for (size_t i = 0; i < labeled.size(); ++i) {
        json j = labeled_factor_json(labeled[i]);
        j["unit_roots_carried"] = factor_points[i];
        jf.push_back(std::move(j));
    }
    doc["factors"] = jf;
    doc["orbits"] = jorbits;
    return doc;
}

} // namespace

void RunConfig::validate() const { RunConfigValidate(*this); }

int run_command(const std::vector<std::string>& args, std::ostream& out,
                std::ostream& err) {
    RunConfig cfg;
    CLI::App app{"periodic points of the quartic 2-adic branch"};
    app.fallthrough();
    app.add_option("--precision", cfg.precision,
                   "working precision in bits (16..256)");
    app.add_option("--nmax", cfg.nmax, "resultant level cap (1..4)");
    app.add_option("--cache-dir", cfg.cache_dir,
                   "resultant cache directory (QDYN_CACHE_DIR overrides)");
    app.add_option("--threads", cfg.threads, "worker threads (0 = all)");
    app.add_option("--seed", cfg.seed, "seed for the randomized suites");
    app.add_option("--format", cfg.format, "output format: text or json");
    app.require_subcommand(1);

    int level = 1;
    auto add_level = [&](CLI::App* sub) {
        sub->add_option("n", level, "level")->required();
    };
    CLI::App* c_res = app.add_subcommand("resultant", "iterated resultant");
    add_level(c_res);
    CLI::App* c_pn = app.add_subcommand("pn", "minimal-period polynomial");
    add_level(c_pn);
    CLI::App* c_factor = app.add_subcommand("factor", "factor the level");
    add_level(c_factor);
    CLI::App* c_label = app.add_subcommand("label", "factor and label");
    add_level(c_label);
    CLI::App* c_classrel =
        app.add_subcommand("classrel", "class-number relation");
    add_level(c_classrel);
    CLI::App* c_orbits = app.add_subcommand("orbits", "periodic orbits");
    add_level(c_orbits);
    app.add_subcommand("fixedpoints", "the fixed points and exceptions");
    app.add_subcommand("verify-series", "branch property suite");
    app.add_subcommand("verify-isogeny", "curve identity suite");
    CLI::App* c_report = app.add_subcommand("report", "full pipeline");
    add_level(c_report);
    CLI::App* c_cache = app.add_subcommand("cache", "cache administration");
    std::string cache_op;
    c_cache->add_option("op", cache_op, "list|clear|verify")->required();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            // --help
            out << app.help();
            return kExitOk;
        }
        err << "usage error: " << e.what() << "\n";
        return kExitUsage;
    }

    try {
        cfg.validate();
        ResultantPipeline pipe(effective_cache_dir(cfg), cfg.threads,
                               cfg.nmax);
        json doc;
        if (app.got_subcommand(c_res)) {
            const BiPoly& r = pipe.iterated_resultant(level);
            doc["command"] = "resultant";
            doc["n"] = level;
            doc["deg_first_var"] = r.deg_u();
            doc["deg_last_var"] = r.deg_v();
            IntPoly diag = pipe.Rn(level);
            doc["diagonal_degree"] = diag.degree();
            doc["diagonal_monic"] = (diag.lc() == 1);
            const BiPoly& rt = pipe.iterated_resultant(level, true);
            doc["tilde_deg_first_var"] = rt.deg_u();
            doc["tilde_deg_last_var"] = rt.deg_v();
        } else if (app.got_subcommand(c_pn)) {
            doc["command"] = "pn";
            doc["n"] = level;
            doc["P_n"] = poly_json(pipe.Pn(level));
            doc["P_n_tilde"] = poly_json(pipe.Pn_tilde(level));
        } else if (app.got_subcommand(c_factor)) {
            doc["command"] = "factor";
            doc["n"] = level;
            auto labeled = factor_level(pipe, level, false);
            json jf = json::array();
            for (const auto& lf : labeled)
                jf.push_back(labeled_factor_json(lf));
            doc["factors"] = jf;
        } else if (app.got_subcommand(c_label)) {
            doc["command"] = "label";
            doc["n"] = level;
            auto labeled = factor_level(pipe, level, true);
            json jf = json::array();
            for (const auto& lf : labeled)
                jf.push_back(labeled_factor_json(lf));
            doc["factors"] = jf;
        } else if (app.got_subcommand(c_classrel)) {
            if (level < 1 || level > 5)
                throw capacity_error("classrel supports n in [1, 5]");
            doc["command"] = "classrel";
            doc["n"] = level;
            auto rel = verify_class_relation(level);
            doc["lhs"] = rel.lhs;
            doc["rhs"] = rel.rhs;
            doc["equal"] = rel.equal;
            json jd = json::array();
            for (const auto& rec : discriminants_with_order(level)) {
                json j;
                j["d"] = rec.d;
                j["h"] = rec.h;
                j["order"] = rec.frob2_sq_order;
                jd.push_back(std::move(j));
            }
            doc["discriminants"] = jd;
            if (!rel.equal)
                throw integrity_error("class-number relation failed");
        } else if (app.got_subcommand(c_orbits)) {
            doc = orbits_json(pipe, cfg, level, false);
            json withcmd;
            withcmd["command"] = "orbits";
            for (auto& [k, v] : doc.items()) withcmd[k] = v;
            doc = std::move(withcmd);
        } else if (app.got_subcommand("fixedpoints")) {
            doc["command"] = "fixedpoints";
            json ju = orbits_json(pipe, cfg, 1, true);
            doc["unit_fixed_points"] = ju["orbits"];
            doc["factors"] = ju["factors"];
            json jex = json::array();
            for (const auto& e : exceptional_fixed_points()) {
                json j;
                j["t_coordinate"] = e.t_coordinate;
                j["normalized"] = e.normalized;
                j["note"] = e.note;
                jex.push_back(std::move(j));
            }
            doc["exceptional"] = jex;
        } else if (app.got_subcommand("verify-series")) {
            doc["command"] = "verify-series";
            auto rep = verify_branch_suite(cfg.precision, cfg.seed,
                                           kBranchSuiteCount);
            doc["count"] = rep.count;
            doc["domain_ok"] = rep.domain_ok;
            doc["curve_ok"] = rep.curve_ok;
            doc["congruence_ok"] = rep.congruence_ok;
            doc["congruence_total"] = rep.congruence_total;
            doc["all_ok"] = rep.all_ok();
            if (!rep.all_ok()) {
                doc["witness"] = rep.witness;
                emit(doc, cfg, out);
                throw integrity_error("branch suite failed");
            }
        } else if (app.got_subcommand("verify-isogeny")) {
            doc["command"] = "verify-isogeny";
            doc["trials"] = kIsogenyTrials;
            doc["primes"] = {kIsogenyPrimeA, kIsogenyPrimeB};
            auto rep = verify_section4(kIsogenyTrials,
                                       {kIsogenyPrimeA, kIsogenyPrimeB},
                                       cfg.seed);
            json items = json::array();
            for (const auto& item : rep.items) {
                json j;
                j["name"] = item.name;
                j["trials"] = item.trials;
                j["passes"] = item.passes;
                if (!item.ok()) j["witness"] = item.witness;
                items.push_back(std::move(j));
            }
            doc["items"] = items;
            doc["all_ok"] = rep.all_ok();
            if (!rep.all_ok()) {
                emit(doc, cfg, out);
                throw integrity_error("isogeny suite failed");
            }
        } else if (app.got_subcommand(c_report)) {
            doc = orbits_json(pipe, cfg, level, true);
            json withcmd;
            withcmd["command"] = "report";
            for (auto& [k, v] : doc.items()) withcmd[k] = v;
            doc = std::move(withcmd);
            // cross-checks: sum of 2h over the labels equals deg P_n,
            // labels biject with the discriminant set (level > 1)
            long sum2h = 0;
            std::vector<std::int64_t> labels;
            for (const auto& jf : doc["factors"]) {
                if (jf.contains("label_d")) {
                    sum2h += 2 * jf["class_number"].get<long>();
                    labels.push_back(jf["label_d"].get<std::int64_t>());
                }
            }
            long degpn = pipe.Pn(level).degree();
            long exceptional_deg = (level == 1) ? 2 : 0;
            doc["check_sum_2h_plus_exceptional"] = sum2h + exceptional_deg;
            doc["check_deg_P_n"] = degpn;
            if (sum2h + exceptional_deg != degpn)
                throw integrity_error("label degree census mismatch");
            // each labeled factor carries exactly h(-d) unit roots
            for (const auto& jf : doc["factors"]) {
                if (!jf.contains("label_d")) continue;
                if (jf["unit_roots_carried"].get<long>() !=
                    jf["class_number"].get<long>())
                    throw integrity_error(
                        "factor unit-root count differs from h(-d)");
            }
            auto want = discriminants_with_order(level);
            std::vector<std::int64_t> expect;
            for (const auto& rec : want) expect.push_back(rec.d);
            std::sort(labels.begin(), labels.end());
            std::sort(expect.begin(), expect.end());
            doc["check_label_bijection"] = (labels == expect);
            if (labels != expect)
                throw integrity_error("labels do not biject with the set");
        } else if (app.got_subcommand(c_cache)) {
            doc["command"] = "cache";
            doc["op"] = cache_op;
            if (cache_op == "list" || cache_op == "verify") {
                auto entries = cache_op == "list" ? pipe.cache_list()
                                                  : pipe.cache_verify();
                json je = json::array();
                bool all_valid = true;
                for (const auto& e : entries) {
                    json j;
                    j["file"] = e.file;
                    j["kind"] = e.kind;
                    j["n"] = e.n;
                    j["version"] = e.version;
                    j["valid"] = e.valid;
                    if (!e.detail.empty()) j["detail"] = e.detail;
                    all_valid = all_valid && e.valid;
                    je.push_back(std::move(j));
                }
                doc["entries"] = je;
                if (cache_op == "verify" && !all_valid) {
                    emit(doc, cfg, out);
                    throw integrity_error("corrupt cache entry");
                }
            } else if (cache_op == "clear") {
                doc["removed"] = pipe.cache_clear();
            } else {
                throw domain_error("cache op must be list, clear or verify");
            }
        }
        emit(doc, cfg, out);
        return kExitOk;
    } catch (const domain_error& e) {
        err << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const capacity_error& e) {
        err << "capacity error: " << e.what() << "\n";
        return kExitCapacity;
    } catch (const std::exception& e) {
        err << "invariant failure: " << e.what() << "\n";
        return kExitInvariant;
    }
}

} // namespace qdyn
