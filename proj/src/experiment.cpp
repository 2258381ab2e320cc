// SPDX-License-Identifier: Apache-2.0
//
// nfbeam - near-field beamforming simulator for obstructed links
// Copyright (C) 2026 nfbeam contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>

#include "nfbeam/experiment.hpp"
#include "nfbeam/hybrid.hpp"
#include "nfbeam/io.hpp"
#include "nfbeam/propagation.hpp"
#include "nfbeam/training.hpp"
#include "nfbeam/version.hpp"

namespace nfbeam
{

using nlohmann::json;

double Rng::uniform()
{
    return (double)(m_gen() >> 11) * 0x1.0p-53; // 53 uniform mantissa bits in [0, 1)
}

double Rng::uniform(double lo, double hi)
{
    return lo + (hi - lo) * uniform();
}

const char *to_string(ExperimentKind kind)
{
    switch (kind)
    {
    case ExperimentKind::beam_pattern:
        return "beam_pattern";
    case ExperimentKind::power_map:
        return "power_map";
    case ExperimentKind::se_vs_power:
        return "se_vs_power";
    case ExperimentKind::blockage_sweep:
        return "blockage_sweep";
    case ExperimentKind::frequency_sweep:
        return "frequency_sweep";
    case ExperimentKind::codebook_sweep:
        return "codebook_sweep";
    case ExperimentKind::obstacle_sweep:
        return "obstacle_sweep";
    case ExperimentKind::hybrid_gap:
        return "hybrid_gap";
    case ExperimentKind::correlation_curves:
        return "correlation_curves";
    }
    return "unknown";
}

ExperimentKind experiment_kind_from_string(const std::string &name)
{
    for (ExperimentKind k : {ExperimentKind::beam_pattern, ExperimentKind::power_map, ExperimentKind::se_vs_power,
                             ExperimentKind::blockage_sweep, ExperimentKind::frequency_sweep,
                             ExperimentKind::codebook_sweep, ExperimentKind::obstacle_sweep,
                             ExperimentKind::hybrid_gap, ExperimentKind::correlation_curves})
        if (name == to_string(k))
            return k;
    throw SpecError("experiment kind '" + name + "' is not known");
}

// ---------------------------------------------- config parsing ----------------------------------------------

static double jnum(const json &j, const char *key, double fallback)
{
    if (!j.contains(key))
        return fallback;
    if (!j.at(key).is_number())
        throw SpecError(std::string("config: '") + key + "' must be a number");
    return j.at(key).get<double>();
}

static int jint(const json &j, const char *key, int fallback)
{
    return (int)std::llround(jnum(j, key, (double)fallback));
}

static bool jbool(const json &j, const char *key, bool fallback)
{
    if (!j.contains(key))
        return fallback;
    if (!j.at(key).is_boolean())
        throw SpecError(std::string("config: '") + key + "' must be a boolean");
    return j.at(key).get<bool>();
}

static CodebookSpec codebook_from_json(const json &j)
{
    CodebookSpec spec;
    if (j.contains("kind"))
        spec.kind = beam_kind_from_string(j.at("kind").get<std::string>());
    if (j.contains("angle"))
    {
        const json &a = j.at("angle");
        spec.angle.count = jint(a, "count", spec.angle.count);
        spec.angle.sin_lo = jnum(a, "sin_lo", spec.angle.sin_lo);
        spec.angle.sin_hi = jnum(a, "sin_hi", spec.angle.sin_hi);
        spec.angle.full_dft = jbool(a, "full_dft", spec.angle.full_dft);
    }
    if (j.contains("distance"))
    {
        const json &a = j.at("distance");
        spec.distance.count = jint(a, "count", spec.distance.count);
        spec.distance.z_max = jnum(a, "z_max", spec.distance.z_max);
        spec.distance.r_min = jnum(a, "r_min", spec.distance.r_min);
    }
    if (j.contains("scale"))
    {
        const json &a = j.at("scale");
        spec.scale.count = jint(a, "count", spec.scale.count);
        spec.scale.s_min = jnum(a, "s_min", spec.scale.s_min);
        spec.scale.s_max = jnum(a, "s_max", spec.scale.s_max);
        spec.scale.signed_pairs = jbool(a, "signed_pairs", spec.scale.signed_pairs);
    }
    if (j.contains("decay"))
    {
        const json &a = j.at("decay");
        spec.decay.count = jint(a, "count", spec.decay.count);
        spec.decay.a_min = jnum(a, "a_min", spec.decay.a_min);
        spec.decay.a_max = jnum(a, "a_max", spec.decay.a_max);
    }
    if (j.contains("curvature"))
    {
        const json &a = j.at("curvature");
        spec.curvature.count = jint(a, "count", spec.curvature.count);
        spec.curvature.c_min = jnum(a, "c_min", spec.curvature.c_min);
        spec.curvature.c_max = jnum(a, "c_max", spec.curvature.c_max);
    }
    return spec;
}

static json codebook_to_json(const CodebookSpec &spec)
{
    return {{"kind", to_string(spec.kind)},
            {"angle",
             {{"count", spec.angle.count},
              {"sin_lo", spec.angle.sin_lo},
              {"sin_hi", spec.angle.sin_hi},
              {"full_dft", spec.angle.full_dft}}},
            {"distance",
             {{"count", spec.distance.count}, {"z_max", spec.distance.z_max}, {"r_min", spec.distance.r_min}}},
            {"scale",
             {{"count", spec.scale.count},
              {"s_min", spec.scale.s_min},
              {"s_max", spec.scale.s_max},
              {"signed_pairs", spec.scale.signed_pairs}}},
            {"decay", {{"count", spec.decay.count}, {"a_min", spec.decay.a_min}, {"a_max", spec.decay.a_max}}},
            {"curvature",
             {{"count", spec.curvature.count}, {"c_min", spec.curvature.c_min}, {"c_max", spec.curvature.c_max}}}};
}

ExperimentConfig experiment_from_json(const json &doc)
{
    if (!doc.is_object())
        throw SpecError("config: document root must be an object");
    if (!doc.contains("kind"))
        throw SpecError("config: missing 'kind'");

    ExperimentConfig cfg;
    cfg.kind = experiment_kind_from_string(doc.at("kind").get<std::string>());
    if (doc.contains("scenario_file"))
        cfg.scenario = load_scenario(doc.at("scenario_file").get<std::string>());
    else if (doc.contains("scenario"))
        cfg.scenario = scenario_from_json(doc.at("scenario").dump());
    else
        throw SpecError("config: missing 'scenario' or 'scenario_file'");

    if (doc.contains("codebook"))
        cfg.codebook = codebook_from_json(doc.at("codebook"));
    cfg.seed = (std::uint64_t)jnum(doc, "seed", 1.0);
    cfg.threads = jint(doc, "threads", 1);
    cfg.quick = jbool(doc, "quick", false);
    if (doc.contains("out_dir"))
        cfg.out_dir = doc.at("out_dir").get<std::string>();
    cfg.params = doc.contains("params") ? doc.at("params") : json::object();
    if (!cfg.params.is_object())
        throw SpecError("config: 'params' must be an object");
    return cfg;
}

ExperimentConfig load_experiment(const std::string &path)
{
    std::ifstream in(path);
    if (!in)
        throw IOError("config: cannot open '" + path + "' for reading");
    std::stringstream ss;
    ss << in.rdbuf();
    json doc;
    try
    {
        doc = json::parse(ss.str());
    }
    catch (const json::exception &e)
    {
        throw SpecError(std::string("config: JSON parse failed: ") + e.what());
    }
    return experiment_from_json(doc);
}

std::uint64_t config_hash(const json &doc)
{
    const std::string dump = doc.dump(); // object keys are stored sorted, so the dump is canonical
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : dump)
    {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

// ---------------------------------------------- shared helpers ----------------------------------------------

static double to_db(double ratio)
{
    return 10.0 * std::log10(ratio);
}

static int shrink(int count, bool quick)
{
    return quick ? std::max(2, count / 4) : count;
}

static CodebookSpec effective_codebook(const CodebookSpec &base, bool quick)
{
    CodebookSpec spec = base;
    spec.angle.count = shrink(spec.angle.count, quick);
    spec.distance.count = shrink(spec.distance.count, quick);
    spec.scale.count = shrink(spec.scale.count, quick);
    spec.decay.count = shrink(spec.decay.count, quick);
    spec.curvature.count = shrink(spec.curvature.count, quick);
    return spec;
}

static Point parse_point(const json &j, const char *what)
{
    if (!j.is_array() || j.size() != 2 || !j.at(0).is_number() || !j.at(1).is_number())
        throw SpecError(std::string("config: '") + what + "' must be a [x, y] pair");
    return {j.at(0).get<double>(), j.at(1).get<double>()};
}

static Point pick_user(const json &params, const Scenario &sc, Rng &rng)
{
    if (params.contains("user"))
        return parse_point(params.at("user"), "user");
    double x0 = 0.25 * sc.grid.x_max, x1 = 0.95 * sc.grid.x_max;
    double y0 = -0.5 * sc.grid.y_halfspan, y1 = 0.5 * sc.grid.y_halfspan;
    if (params.contains("user_box"))
    {
        const json &b = params.at("user_box");
        if (!b.is_array() || b.size() != 4)
            throw SpecError("config: 'user_box' must be [x_lo, x_hi, y_lo, y_hi]");
        x0 = b.at(0).get<double>();
        x1 = b.at(1).get<double>();
        y0 = b.at(2).get<double>();
        y1 = b.at(3).get<double>();
    }
    for (int tries = 0; tries < 1000; ++tries)
    {
        const Point u{rng.uniform(x0, x1), rng.uniform(y0, y1)};
        if (!inside_any_obstacle(sc, u.x, u.y))
            return u;
    }
    throw GeometryError("config: user box lies entirely inside obstacles");
}

static Eigen::VectorXcd user_channel(const Scenario &sc, const Point &user, int threads)
{
    return channel_matrix(sc, {user}, threads).col(0);
}

struct SchemeResult
{
    double power = 0.0;
    long probes = 0;
    json detail = json::object();
};

static HybridOptions hybrid_options_from(const json &params)
{
    HybridOptions opt;
    if (params.contains("hybrid"))
    {
        const json &h = params.at("hybrid");
        opt.num_chains = jint(h, "chains", opt.num_chains);
        opt.phase_bits = jint(h, "bits", opt.phase_bits);
        opt.oversampling = jint(h, "oversampling", opt.oversampling);
    }
    return opt;
}

// Received power of one scheme on the given channel. "steered" always means the full
// far-field DFT grid (one codeword per element); the window axes only shape the
// near-field books.
static SchemeResult eval_scheme(const std::string &name, const Scenario &sc, const Eigen::VectorXcd &h,
                                const CodebookSpec &book, const json &params)
{
    SchemeResult res;
    if (name == "mrt")
    {
        res.power = mrt_power(sc, h);
        res.probes = 0;
        return res;
    }
    if (name == "hierarchical")
    {
        CodebookSpec spec = book;
        spec.kind = BeamKind::nf_airy;
        const TrainingResult tr = hierarchical_search(sc, h, spec);
        res.power = tr.power;
        res.probes = tr.probes;
        res.detail = {{"kind", to_string(tr.best.kind)}, {"theta", tr.best.theta}, {"range", tr.best.range},
                      {"scale", tr.best.scale},          {"decay", tr.best.decay}};
        return res;
    }
    if (name == "hybrid")
    {
        CodebookSpec spec = book;
        spec.kind = BeamKind::nf_airy;
        const TrainingResult tr = exhaustive_search(sc, h, spec);
        const Eigen::VectorXcd target = beam_weights(sc, tr.best);
        const HybridBeam hb = omp_decompose(target, hybrid_options_from(params));
        res.power = received_power(h, hybrid_weights(hb, sc.tx_power));
        res.probes = tr.probes;
        res.detail = {{"target_power", tr.power}, {"rank_deficient", hb.rank_deficient}};
        return res;
    }

    CodebookSpec spec = book;
    spec.kind = beam_kind_from_string(name);
    if (spec.kind == BeamKind::steered)
    {
        spec.angle.full_dft = true;
        spec.angle.count = sc.num_elements;
    }
    const TrainingResult tr = exhaustive_search(sc, h, spec);
    res.power = tr.power;
    res.probes = tr.probes;
    res.detail = {{"best_index", tr.best_index}};
    return res;
}

static std::vector<std::string> scheme_list(const json &params, std::vector<std::string> fallback)
{
    if (!params.contains("schemes"))
        return fallback;
    std::vector<std::string> out;
    for (const json &s : params.at("schemes"))
        out.push_back(s.get<std::string>());
    if (out.empty())
        throw SpecError("config: 'schemes' must not be empty");
    return out;
}

static std::ofstream csv_out(const std::filesystem::path &path)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw IOError("cannot open '" + path.string() + "' for writing");
    out << std::setprecision(std::numeric_limits<double>::max_digits10);
    return out;
}

// ---------------------------------------------- experiment kinds ----------------------------------------------

namespace
{

struct Runner
{
    const ExperimentConfig &cfg;
    CodebookSpec book;          // after quick shrink
    std::filesystem::path dir;
    Rng rng;
    json metrics = json::object();
    std::vector<std::string> outputs;

    explicit Runner(const ExperimentConfig &c)
        : cfg(c), book(effective_codebook(c.codebook, c.quick)), dir(c.out_dir), rng(c.seed)
    {
    }

    std::ofstream open_csv(const std::string &name)
    {
        outputs.push_back(name);
        return csv_out(dir / name);
    }

    void note_output(const std::string &name)
    {
        outputs.push_back(name);
    }

    void run_beam_pattern()
    {
        if (!cfg.params.contains("beams") || !cfg.params.at("beams").is_array() || cfg.params.at("beams").empty())
            throw SpecError("beam_pattern: 'params.beams' must be a non-empty array");
        const double db_floor = jnum(cfg.params, "db_floor", -50.0);
        RecordOptions ropt;
        ropt.x_stride = std::max(1, jint(cfg.params, "x_stride", 1));

        int idx = 0;
        for (const json &jb : cfg.params.at("beams"))
        {
            BeamParams p;
            p.kind = beam_kind_from_string(jb.at("kind").get<std::string>());
            p.theta = jnum(jb, "theta", 0.0);
            p.range = jnum(jb, "range", 0.0);
            p.curvature = jnum(jb, "curvature", 0.0);
            p.scale = jnum(jb, "scale", 0.0);
            p.decay = jnum(jb, "decay", 0.0);

            const Eigen::VectorXcd w = beam_weights(cfg.scenario, p);
            const FieldRecord rec = propagate_record(cfg.scenario, w, ropt);

            const std::string tag = "beam" + std::to_string(idx);
            save_weights_csv((dir / (tag + "_weights.csv")).string(), w);
            note_output(tag + "_weights.csv");
            save_field_csv((dir / (tag + "_field.csv")).string(), rec);
            note_output(tag + "_field.csv");

            Eigen::MatrixXd db = rec.samples.cwiseAbs2().unaryExpr(
                [&](double v) { return to_db(std::max(v, 1.0e-300)); });
            const double peak = db.maxCoeff();
            db.array() -= peak; // normalize the map to its peak
            save_heatmap_pgm((dir / (tag + "_intensity.pgm")).string(), db, db_floor, 0.0);
            note_output(tag + "_intensity.pgm");
            ++idx;
        }
        metrics["beams"] = idx;
    }

    void run_power_map()
    {
        const Point user = pick_user(cfg.params, cfg.scenario, rng);
        const Eigen::VectorXcd h = user_channel(cfg.scenario, user, cfg.threads);
        const TrainingResult tr = exhaustive_search(cfg.scenario, h, book);
        const double p_mrt = mrt_power(cfg.scenario, h);

        const Eigen::VectorXcd w = beam_weights(cfg.scenario, tr.best);
        RecordOptions ropt;
        ropt.x_stride = std::max(1, jint(cfg.params, "x_stride", 1));
        const FieldRecord rec = propagate_record(cfg.scenario, w, ropt);

        save_field_csv((dir / "field.csv").string(), rec);
        note_output("field.csv");
        Eigen::MatrixXd db =
            rec.samples.cwiseAbs2().unaryExpr([&](double v) { return to_db(std::max(v, 1.0e-300)); });
        db.array() -= db.maxCoeff();
        save_heatmap_pgm((dir / "power_map.pgm").string(), db, jnum(cfg.params, "db_floor", -50.0), 0.0);
        note_output("power_map.pgm");

        std::ofstream out = open_csv("training.csv");
        out << "kind,theta,range,curvature,scale,decay,power,gap_db,probes,blockage_ratio\n";
        out << to_string(tr.best.kind) << "," << tr.best.theta << "," << tr.best.range << "," << tr.best.curvature
            << "," << tr.best.scale << "," << tr.best.decay << "," << tr.power << "," << to_db(p_mrt / tr.power)
            << "," << tr.probes << "," << blockage_ratio(cfg.scenario, user) << "\n";

        metrics["user"] = {user.x, user.y};
        metrics["gap_db"] = to_db(p_mrt / tr.power);
    }

    void run_se_vs_power()
    {
        const Point user = pick_user(cfg.params, cfg.scenario, rng);
        const Eigen::VectorXcd h = user_channel(cfg.scenario, user, cfg.threads);
        const std::vector<std::string> schemes = scheme_list(
            cfg.params, {"mrt", "steered", "focused", "curved", "classic_airy", "nf_airy", "hierarchical", "hybrid"});

        std::vector<double> powers;
        if (cfg.params.contains("powers_db"))
            for (const json &v : cfg.params.at("powers_db"))
                powers.push_back(std::pow(10.0, v.get<double>() / 10.0));
        else
            for (int d = -10; d <= 20; d += 2)
                powers.push_back(std::pow(10.0, d / 10.0));

        // received power scales linearly in tx_power and the argmax is scale invariant,
        // so each scheme trains once at the scenario power
        std::vector<double> unit_gain;
        for (const std::string &name : schemes)
            unit_gain.push_back(eval_scheme(name, cfg.scenario, h, book, cfg.params).power / cfg.scenario.tx_power);

        std::ofstream out = open_csv("se_vs_power.csv");
        out << "tx_power";
        for (const std::string &name : schemes)
            out << "," << name << "_se";
        out << "\n";
        for (double p : powers)
        {
            out << p;
            for (std::size_t i = 0; i < schemes.size(); ++i)
                out << "," << spectral_efficiency(p * unit_gain[i], cfg.scenario.noise_power);
            out << "\n";
        }
        metrics["user"] = {user.x, user.y};
        metrics["powers"] = powers.size();
    }

    void run_blockage_sweep()
    {
        if (!cfg.params.contains("user"))
            throw SpecError("blockage_sweep: 'params.user' is required");
        const Point user = parse_point(cfg.params.at("user"), "user");
        if (!cfg.params.contains("variants") || !cfg.params.at("variants").is_array() ||
            cfg.params.at("variants").empty())
            throw SpecError("blockage_sweep: 'params.variants' must be a non-empty array of obstacle lists");

        const std::vector<std::string> schemes =
            scheme_list(cfg.params, {"focused", "curved", "classic_airy", "nf_airy", "hierarchical"});

        std::ofstream out = open_csv("blockage_sweep.csv");
        out << "variant,ratio,mrt_power";
        for (const std::string &name : schemes)
            out << "," << name << "_gap_db";
        out << "\n";

        int idx = 0;
        json ratios = json::array();
        for (const json &jv : cfg.params.at("variants"))
        {
            Scenario sc = cfg.scenario;
            sc.obstacles.clear();
            for (const json &jo : jv)
            {
                if (!jo.is_array() || jo.size() != 4)
                    throw SpecError("blockage_sweep: obstacle variants must be [x_min, x_max, y_min, y_max]");
                sc.obstacles.push_back(
                    {jo.at(0).get<double>(), jo.at(1).get<double>(), jo.at(2).get<double>(), jo.at(3).get<double>()});
            }
            validate(sc);

            const Eigen::VectorXcd h = user_channel(sc, user, cfg.threads);
            const double p_mrt = mrt_power(sc, h);
            const double ratio = blockage_ratio(sc, user);

            out << idx << "," << ratio << "," << p_mrt;
            for (const std::string &name : schemes)
            {
                const SchemeResult r = eval_scheme(name, sc, h, book, cfg.params);
                out << "," << to_db(p_mrt / r.power);
            }
            out << "\n";
            ratios.push_back(ratio);
            ++idx;
        }
        metrics["user"] = {user.x, user.y};
        metrics["ratios"] = ratios;
    }

    void run_frequency_sweep()
    {
        if (!cfg.params.contains("frequencies_ghz") || !cfg.params.at("frequencies_ghz").is_array())
            throw SpecError("frequency_sweep: 'params.frequencies_ghz' must be an array");
        const std::vector<std::string> schemes = scheme_list(cfg.params, {"focused", "nf_airy", "hierarchical"});
        const Point user = pick_user(cfg.params, cfg.scenario, rng);

        std::ofstream out = open_csv("frequency_sweep.csv");
        out << "frequency_ghz,ratio,mrt_power";
        for (const std::string &name : schemes)
            out << "," << name << "_gap_db";
        out << "\n";

        for (const json &jf : cfg.params.at("frequencies_ghz"))
        {
            Scenario sc = cfg.scenario;
            sc.frequency_hz = jf.get<double>() * 1.0e9; // pitch and grid defaults track the new wavelength
            validate(sc);
            const Eigen::VectorXcd h = user_channel(sc, user, cfg.threads);
            const double p_mrt = mrt_power(sc, h);
            out << jf.get<double>() << "," << blockage_ratio(sc, user) << "," << p_mrt;
            for (const std::string &name : schemes)
                out << "," << to_db(p_mrt / eval_scheme(name, sc, h, book, cfg.params).power);
            out << "\n";
        }
        metrics["user"] = {user.x, user.y};
    }

    void run_codebook_sweep()
    {
        if (!cfg.params.contains("steps") || !cfg.params.at("steps").is_array() || cfg.params.at("steps").empty())
            throw SpecError("codebook_sweep: 'params.steps' must be a non-empty array");
        const Point user = pick_user(cfg.params, cfg.scenario, rng);
        const Eigen::VectorXcd h = user_channel(cfg.scenario, user, cfg.threads);
        const double p_mrt = mrt_power(cfg.scenario, h);

        std::ofstream out = open_csv("codebook_sweep.csv");
        out << "angle,distance,scale,decay,entries,probes,gap_db,hier_probes,hier_gap_db\n";
        for (const json &js : cfg.params.at("steps"))
        {
            CodebookSpec spec = book;
            spec.kind = BeamKind::nf_airy;
            spec.angle.count = jint(js, "angle", spec.angle.count);
            spec.distance.count = jint(js, "distance", spec.distance.count);
            spec.scale.count = jint(js, "scale", spec.scale.count);
            spec.decay.count = jint(js, "decay", spec.decay.count);

            const TrainingResult ex = exhaustive_search(cfg.scenario, h, spec);
            const TrainingResult hi = hierarchical_search(cfg.scenario, h, spec);
            out << spec.angle.count << "," << spec.distance.count << "," << spec.scale.count << ","
                << spec.decay.count << "," << codebook_size(spec) << "," << ex.probes << ","
                << to_db(p_mrt / ex.power) << "," << hi.probes << "," << to_db(p_mrt / hi.power) << "\n";
        }
        metrics["user"] = {user.x, user.y};
    }

    void run_obstacle_sweep()
    {
        if (cfg.scenario.obstacles.empty())
            throw SpecError("obstacle_sweep: the scenario needs at least one obstacle");
        if (!cfg.params.contains("heights") || !cfg.params.at("heights").is_array())
            throw SpecError("obstacle_sweep: 'params.heights' must be an array");
        const std::vector<std::string> schemes = scheme_list(cfg.params, {"focused", "nf_airy", "hierarchical"});
        const Point user = pick_user(cfg.params, cfg.scenario, rng);
        const Obstacle base = cfg.scenario.obstacles[0];
        const double yc = 0.5 * (base.y_min + base.y_max);

        std::ofstream out = open_csv("obstacle_sweep.csv");
        out << "height,ratio,mrt_power";
        for (const std::string &name : schemes)
            out << "," << name << "_gap_db";
        out << "\n";

        for (const json &jh : cfg.params.at("heights"))
        {
            const double height = jh.get<double>();
            Scenario sc = cfg.scenario;
            sc.obstacles[0].y_min = yc - 0.5 * height;
            sc.obstacles[0].y_max = yc + 0.5 * height;
            validate(sc);
            const Eigen::VectorXcd h = user_channel(sc, user, cfg.threads);
            const double p_mrt = mrt_power(sc, h);
            out << height << "," << blockage_ratio(sc, user) << "," << p_mrt;
            for (const std::string &name : schemes)
                out << "," << to_db(p_mrt / eval_scheme(name, sc, h, book, cfg.params).power);
            out << "\n";
        }
        metrics["user"] = {user.x, user.y};
    }

    void run_hybrid_gap()
    {
        const Point user = pick_user(cfg.params, cfg.scenario, rng);
        const Eigen::VectorXcd h = user_channel(cfg.scenario, user, cfg.threads);

        CodebookSpec spec = book;
        spec.kind = BeamKind::nf_airy;
        const TrainingResult tr = exhaustive_search(cfg.scenario, h, spec);
        const Eigen::VectorXcd target = beam_weights(cfg.scenario, tr.best);
        const double p_target = received_power(h, target);

        std::vector<int> chains{4, 8, 16, 25};
        std::vector<int> bits{2, 3, 4};
        if (cfg.params.contains("chains"))
        {
            chains.clear();
            for (const json &v : cfg.params.at("chains"))
                chains.push_back(v.get<int>());
        }
        if (cfg.params.contains("bits"))
        {
            bits.clear();
            for (const json &v : cfg.params.at("bits"))
                bits.push_back(v.get<int>());
        }
        HybridOptions base = hybrid_options_from(cfg.params);

        std::ofstream out = open_csv("hybrid_gap.csv");
        out << "chains,bits,gap_db,final_residual,rank_deficient\n";
        HybridBeam widest;
        int widest_chains = -1;
        for (int nc : chains)
            for (int nb : bits)
            {
                HybridOptions opt = base;
                opt.num_chains = nc;
                opt.phase_bits = nb;
                const HybridBeam hb = omp_decompose(target, opt);
                const double p = received_power(h, hybrid_weights(hb, cfg.scenario.tx_power));
                out << nc << "," << nb << "," << to_db(p_target / p) << "," << hb.residual.back() << ","
                    << (hb.rank_deficient ? 1 : 0) << "\n";
                if (nc > widest_chains)
                {
                    widest_chains = nc;
                    widest = hb;
                }
            }

        save_hybrid((dir / "hybrid_beam.txt").string(), widest);
        note_output("hybrid_beam.txt");
        std::ofstream res = open_csv("hybrid_residual.csv");
        res << "step,residual\n";
        for (std::size_t i = 0; i < widest.residual.size(); ++i)
            res << i + 1 << "," << widest.residual[i] << "\n";

        metrics["user"] = {user.x, user.y};
        metrics["target_gap_db"] = to_db(mrt_power(cfg.scenario, h) / p_target);
    }

    void run_correlation_curves()
    {
        CodebookSpec spec = book;
        spec.kind = BeamKind::nf_airy;
        const std::vector<double> sines = sample_angles(spec.angle);
        const double theta = std::asin(sines[sines.size() / 2]);
        const std::vector<double> dists = sample_distances(spec.distance, theta);
        if (dists.empty())
            throw SpecError("correlation_curves: the distance axis is empty");
        const double range = dists[0];
        const std::vector<double> scales = sample_scales(spec.scale);
        const std::vector<double> decays = sample_decays(spec.decay);
        const int n_pos = spec.scale.count; // positive block of the scale axis

        const auto codeword = [&](double sc, double a) {
            BeamParams p;
            p.kind = BeamKind::nf_airy;
            p.theta = theta;
            p.range = range;
            p.scale = sc;
            p.decay = a;
            return beam_weights(cfg.scenario, p);
        };

        // neighbor correlation along the decay axis at the middle positive scale
        const double s_mid = scales[(std::size_t)(n_pos / 2)];
        std::ofstream out_d = open_csv("correlation_decay.csv");
        out_d << "index,correlation\n";
        json decay_corr = json::array();
        for (std::size_t k = 0; k + 1 < decays.size(); ++k)
        {
            const double c = codeword_correlation(codeword(s_mid, decays[k]), codeword(s_mid, decays[k + 1]));
            out_d << k << "," << c << "\n";
            decay_corr.push_back(c);
        }

        // mean correlation vs index separation along the positive scale block, decay fixed
        const double a_mid = decays[decays.size() / 2];
        std::vector<Eigen::VectorXcd> words;
        for (int i = 0; i < n_pos; ++i)
            words.push_back(codeword(scales[(std::size_t)i], a_mid));
        std::ofstream out_s = open_csv("correlation_scale.csv");
        out_s << "separation,mean_correlation\n";
        json scale_corr = json::array();
        for (int k = 1; k < n_pos; ++k)
        {
            double acc = 0.0;
            int cnt = 0;
            for (int i = 0; i + k < n_pos; ++i)
            {
                acc += codeword_correlation(words[(std::size_t)i], words[(std::size_t)(i + k)]);
                ++cnt;
            }
            out_s << k << "," << acc / cnt << "\n";
            scale_corr.push_back(acc / cnt);
        }
        metrics["decay_adjacent"] = decay_corr;
        metrics["scale_separation"] = scale_corr;
    }
};

} // namespace

int run_experiment(const ExperimentConfig &cfg)
{
    validate(cfg.scenario);
    std::string out_dir = cfg.out_dir;
    if (out_dir.empty())
    {
        const char *env = std::getenv("NFBEAM_OUT");
        out_dir = env && *env ? env : "out";
    }
    ExperimentConfig eff = cfg;
    eff.out_dir = out_dir;
    std::filesystem::create_directories(out_dir);

    Runner runner(eff);
    switch (cfg.kind)
    {
    case ExperimentKind::beam_pattern:
        runner.run_beam_pattern();
        break;
    case ExperimentKind::power_map:
        runner.run_power_map();
        break;
    case ExperimentKind::se_vs_power:
        runner.run_se_vs_power();
        break;
    case ExperimentKind::blockage_sweep:
        runner.run_blockage_sweep();
        break;
    case ExperimentKind::frequency_sweep:
        runner.run_frequency_sweep();
        break;
    case ExperimentKind::codebook_sweep:
        runner.run_codebook_sweep();
        break;
    case ExperimentKind::obstacle_sweep:
        runner.run_obstacle_sweep();
        break;
    case ExperimentKind::hybrid_gap:
        runner.run_hybrid_gap();
        break;
    case ExperimentKind::correlation_curves:
        runner.run_correlation_curves();
        break;
    }

    json manifest;
    manifest["format"] = "nfbeam-manifest-v1";
    manifest["version"] = version_string;
    manifest["kind"] = to_string(cfg.kind);
    manifest["seed"] = cfg.seed;
    manifest["threads"] = cfg.threads;
    manifest["quick"] = cfg.quick;
    manifest["scenario"] = json::parse(scenario_to_json(cfg.scenario));
    manifest["codebook"] = codebook_to_json(runner.book); // effective axes after any quick shrink
    manifest["params"] = cfg.params;

    json hashed = manifest; // hash covers the run inputs, not the produced files
    manifest["config_hash"] = config_hash(hashed);
    std::sort(runner.outputs.begin(), runner.outputs.end());
    manifest["outputs"] = runner.outputs;
    manifest["metrics"] = runner.metrics;

    std::ofstream mf(std::filesystem::path(out_dir) / "run_manifest.json", std::ios::binary);
    if (!mf)
        throw IOError("cannot write the run manifest");
    mf << manifest.dump(2) << "\n";
    return 0;
}

} // namespace nfbeam
