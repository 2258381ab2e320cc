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

// Python bindings over the core simulation and training operations. Vectors and
// matrices cross the boundary as numpy arrays; library errors surface as the
// nfbeam.Error exception with the C++ message.

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <json.hpp>

#include "nfbeam/airy.hpp"
#include "nfbeam/codebooks.hpp"
#include "nfbeam/experiment.hpp"
#include "nfbeam/hybrid.hpp"
#include "nfbeam/io.hpp"
#include "nfbeam/propagation.hpp"
#include "nfbeam/scenario.hpp"
#include "nfbeam/training.hpp"
#include "nfbeam/version.hpp"
#include "nfbeam/waveforms.hpp"

namespace py = pybind11;
using namespace nfbeam;

namespace
{

std::vector<Point> as_points(const std::vector<std::pair<double, double>> &pairs)
{
    std::vector<Point> out;
    out.reserve(pairs.size());
    for (const auto &[x, y] : pairs)
        out.push_back({x, y});
    return out;
}

} // namespace

PYBIND11_MODULE(nfbeam, m)
{
    m.doc() = "near-field beamforming simulator for obstructed links";
    m.attr("__version__") = version_string;
    m.attr("speed_of_light") = speed_of_light;

    py::register_exception<Error>(m, "Error");

    // ---------------------------------------------------------------- scenario
    py::class_<Point>(m, "Point")
        .def(py::init<>())
        .def(py::init<double, double>(), py::arg("x"), py::arg("y"))
        .def_readwrite("x", &Point::x)
        .def_readwrite("y", &Point::y);

    py::class_<Obstacle>(m, "Obstacle")
        .def(py::init<>())
        .def(py::init<double, double, double, double>(), py::arg("x_min"), py::arg("x_max"), py::arg("y_min"),
             py::arg("y_max"))
        .def_readwrite("x_min", &Obstacle::x_min)
        .def_readwrite("x_max", &Obstacle::x_max)
        .def_readwrite("y_min", &Obstacle::y_min)
        .def_readwrite("y_max", &Obstacle::y_max)
        .def("contains", &Obstacle::contains, py::arg("x"), py::arg("y"))
        .def("cuts", &Obstacle::cuts, py::arg("a"), py::arg("b"));

    py::class_<GridParams>(m, "GridParams")
        .def(py::init<>())
        .def_readwrite("dx", &GridParams::dx)
        .def_readwrite("dy", &GridParams::dy)
        .def_readwrite("y_halfspan", &GridParams::y_halfspan)
        .def_readwrite("x_max", &GridParams::x_max)
        .def_readwrite("pad_factor", &GridParams::pad_factor);

    py::class_<Scenario>(m, "Scenario")
        .def(py::init<>())
        .def_readwrite("frequency_hz", &Scenario::frequency_hz)
        .def_readwrite("num_elements", &Scenario::num_elements)
        .def_readwrite("spacing", &Scenario::spacing)
        .def_readwrite("tx_power", &Scenario::tx_power)
        .def_readwrite("noise_power", &Scenario::noise_power)
        .def_readwrite("obstacles", &Scenario::obstacles)
        .def_readwrite("grid", &Scenario::grid)
        .def("wavelength", &Scenario::wavelength)
        .def("wavenumber", &Scenario::wavenumber)
        .def("pitch", &Scenario::pitch)
        .def("aperture", &Scenario::aperture)
        .def("element_y", &Scenario::element_y, py::arg("n"))
        .def("step_x", &Scenario::step_x)
        .def("step_y", &Scenario::step_y)
        .def("num_planes", &Scenario::num_planes)
        .def("window_size", &Scenario::window_size)
        .def("window_y", &Scenario::window_y, py::arg("j"));

    m.def("validate", &validate, py::arg("scenario"));
    m.def("inside_any_obstacle", &inside_any_obstacle, py::arg("scenario"), py::arg("x"), py::arg("y"));
    m.def(
        "blockage_ratio", [](const Scenario &s, double x, double y) { return blockage_ratio(s, {x, y}); },
        py::arg("scenario"), py::arg("x"), py::arg("y"));
    m.def("obstacle_mask", &obstacle_mask, py::arg("scenario"), py::arg("x"));
    m.def("scenario_from_json", &scenario_from_json, py::arg("text"));
    m.def("scenario_to_json", &scenario_to_json, py::arg("scenario"));
    m.def("load_scenario", &load_scenario, py::arg("path"));
    m.def("save_scenario", &save_scenario, py::arg("scenario"), py::arg("path"));

    // ---------------------------------------------------------------- airy
    m.def(
        "airy_ai", [](double x) { return airy_ai(x); }, py::arg("x"));
    m.def(
        "airy_ai_array", [](const Eigen::ArrayXd &x) { return airy_ai(x); }, py::arg("x"));
    m.def(
        "airy_envelope", [](const Eigen::ArrayXd &y, double scale, double decay) { return airy_envelope(y, scale, decay); },
        py::arg("y"), py::arg("scale"), py::arg("decay"));

    // ---------------------------------------------------------------- waveforms
    py::enum_<BeamKind>(m, "BeamKind")
        .value("steered", BeamKind::steered)
        .value("focused", BeamKind::focused)
        .value("curved", BeamKind::curved)
        .value("classic_airy", BeamKind::classic_airy)
        .value("nf_airy", BeamKind::nf_airy);

    py::class_<BeamParams>(m, "BeamParams")
        .def(py::init([](BeamKind kind, double theta, double range, double curvature, double scale, double decay) {
                 BeamParams p;
                 p.kind = kind;
                 p.theta = theta;
                 p.range = range;
                 p.curvature = curvature;
                 p.scale = scale;
                 p.decay = decay;
                 return p;
             }),
             py::arg("kind") = BeamKind::steered, py::arg("theta") = 0.0, py::arg("range") = 0.0,
             py::arg("curvature") = 0.0, py::arg("scale") = 0.0, py::arg("decay") = 0.0)
        .def_readwrite("kind", &BeamParams::kind)
        .def_readwrite("theta", &BeamParams::theta)
        .def_readwrite("range", &BeamParams::range)
        .def_readwrite("curvature", &BeamParams::curvature)
        .def_readwrite("scale", &BeamParams::scale)
        .def_readwrite("decay", &BeamParams::decay);

    m.def("beam_weights", &beam_weights, py::arg("scenario"), py::arg("params"));
    m.def("mrt_weights", &mrt_weights, py::arg("scenario"), py::arg("channel"));
    m.def("normalize_power", &normalize_power, py::arg("weights"), py::arg("power"));

    // ---------------------------------------------------------------- propagation
    py::class_<Field>(m, "Field")
        .def(py::init<>())
        .def_readwrite("x", &Field::x)
        .def_readwrite("samples", &Field::samples);

    py::class_<FieldRecord>(m, "FieldRecord")
        .def_readonly("xs", &FieldRecord::xs)
        .def_readonly("ys", &FieldRecord::ys)
        .def_readonly("samples", &FieldRecord::samples);

    py::class_<RecordOptions>(m, "RecordOptions")
        .def(py::init<>())
        .def_readwrite("x_stride", &RecordOptions::x_stride)
        .def_readwrite("crop", &RecordOptions::crop);

    py::class_<Propagator>(m, "Propagator")
        .def(py::init<const Scenario &>(), py::arg("scenario"))
        .def("aperture_field", &Propagator::aperture_field, py::arg("weights"))
        .def("step", &Propagator::step, py::arg("field"), py::arg("dist"))
        .def("advance", &Propagator::advance, py::arg("field"), py::arg("x_target"))
        .def("probe", &Propagator::probe, py::arg("field"), py::arg("y"))
        .def(
            "channel_matrix",
            [](const Propagator &p, const std::vector<std::pair<double, double>> &users) {
                return p.channel_matrix(as_points(users));
            },
            py::arg("users"));

    m.def(
        "channel_matrix",
        [](const Scenario &s, const std::vector<std::pair<double, double>> &users, int threads) {
            return channel_matrix(s, as_points(users), threads);
        },
        py::arg("scenario"), py::arg("users"), py::arg("threads") = 1);
    m.def("propagate_record", &propagate_record, py::arg("scenario"), py::arg("weights"),
          py::arg("options") = RecordOptions{});
    m.def(
        "rs_transfer",
        [](const Scenario &s, const Field &src, const std::vector<std::pair<double, double>> &targets) {
            return rs_transfer(s, src, as_points(targets));
        },
        py::arg("scenario"), py::arg("src"), py::arg("targets"));

    // ---------------------------------------------------------------- codebooks
    py::class_<AngleAxis>(m, "AngleAxis")
        .def(py::init<>())
        .def_readwrite("count", &AngleAxis::count)
        .def_readwrite("sin_lo", &AngleAxis::sin_lo)
        .def_readwrite("sin_hi", &AngleAxis::sin_hi)
        .def_readwrite("full_dft", &AngleAxis::full_dft);

    py::class_<DistanceAxis>(m, "DistanceAxis")
        .def(py::init<>())
        .def_readwrite("count", &DistanceAxis::count)
        .def_readwrite("z_max", &DistanceAxis::z_max)
        .def_readwrite("r_min", &DistanceAxis::r_min);

    py::class_<ScaleAxis>(m, "ScaleAxis")
        .def(py::init<>())
        .def_readwrite("count", &ScaleAxis::count)
        .def_readwrite("s_min", &ScaleAxis::s_min)
        .def_readwrite("s_max", &ScaleAxis::s_max)
        .def_readwrite("signed_pairs", &ScaleAxis::signed_pairs);

    py::class_<DecayAxis>(m, "DecayAxis")
        .def(py::init<>())
        .def_readwrite("count", &DecayAxis::count)
        .def_readwrite("a_min", &DecayAxis::a_min)
        .def_readwrite("a_max", &DecayAxis::a_max);

    py::class_<CurvatureAxis>(m, "CurvatureAxis")
        .def(py::init<>())
        .def_readwrite("count", &CurvatureAxis::count)
        .def_readwrite("c_min", &CurvatureAxis::c_min)
        .def_readwrite("c_max", &CurvatureAxis::c_max);

    py::class_<CodebookSpec>(m, "CodebookSpec")
        .def(py::init<>())
        .def_readwrite("kind", &CodebookSpec::kind)
        .def_readwrite("angle", &CodebookSpec::angle)
        .def_readwrite("distance", &CodebookSpec::distance)
        .def_readwrite("scale", &CodebookSpec::scale)
        .def_readwrite("decay", &CodebookSpec::decay)
        .def_readwrite("curvature", &CodebookSpec::curvature);

    py::class_<Codebook>(m, "Codebook")
        .def_readonly("kind", &Codebook::kind)
        .def_readonly("entries", &Codebook::entries);

    m.def("sample_angles", &sample_angles, py::arg("axis"));
    m.def("sample_distances", &sample_distances, py::arg("axis"), py::arg("theta"));
    m.def("sample_scales", &sample_scales, py::arg("axis"));
    m.def("sample_decays", &sample_decays, py::arg("axis"));
    m.def("sample_curvatures", &sample_curvatures, py::arg("axis"));
    m.def("assemble_codebook", &assemble_codebook, py::arg("spec"));
    m.def("codebook_size", &codebook_size, py::arg("spec"));
    m.def("materialize", &materialize, py::arg("scenario"), py::arg("codebook"));
    m.def("codeword_correlation", &codeword_correlation, py::arg("a"), py::arg("b"));

    // ---------------------------------------------------------------- training
    py::class_<TrainingResult>(m, "TrainingResult")
        .def_readonly("best_index", &TrainingResult::best_index)
        .def_readonly("best", &TrainingResult::best)
        .def_readonly("power", &TrainingResult::power)
        .def_readonly("probes", &TrainingResult::probes)
        .def_readonly("stages", &TrainingResult::stages);

    m.def("received_power", &received_power, py::arg("channel"), py::arg("weights"));
    m.def("spectral_efficiency", &spectral_efficiency, py::arg("rx_power"), py::arg("noise_power"));
    m.def("mrt_power", &mrt_power, py::arg("scenario"), py::arg("channel"));
    m.def("exhaustive_search", &exhaustive_search, py::arg("scenario"), py::arg("channel"), py::arg("spec"));
    m.def("hierarchical_search", &hierarchical_search, py::arg("scenario"), py::arg("channel"), py::arg("spec"));

    // ---------------------------------------------------------------- hybrid
    py::class_<HybridOptions>(m, "HybridOptions")
        .def(py::init([](int chains, int bits, int oversampling) {
                 HybridOptions o;
                 o.num_chains = chains;
                 o.phase_bits = bits;
                 o.oversampling = oversampling;
                 return o;
             }),
             py::arg("num_chains") = 8, py::arg("phase_bits") = 3, py::arg("oversampling") = 4)
        .def_readwrite("num_chains", &HybridOptions::num_chains)
        .def_readwrite("phase_bits", &HybridOptions::phase_bits)
        .def_readwrite("oversampling", &HybridOptions::oversampling);

    py::class_<HybridBeam>(m, "HybridBeam")
        .def_readonly("analog", &HybridBeam::analog)
        .def_readonly("digital", &HybridBeam::digital)
        .def_readonly("atoms", &HybridBeam::atoms)
        .def_readonly("phase_index", &HybridBeam::phase_index)
        .def_readonly("residual", &HybridBeam::residual)
        .def_readonly("phase_bits", &HybridBeam::phase_bits)
        .def_readonly("rank_deficient", &HybridBeam::rank_deficient);

    m.def("steering_dictionary", &steering_dictionary, py::arg("num_elements"), py::arg("oversampling"));
    m.def("omp_decompose", &omp_decompose, py::arg("target"), py::arg("options"));
    m.def("hybrid_weights", &hybrid_weights, py::arg("beam"), py::arg("power"));

    // ---------------------------------------------------------------- experiments
    m.def(
        "run_experiment",
        [](const std::string &config_json, const std::string &out_dir) {
            ExperimentConfig cfg = experiment_from_json(nlohmann::json::parse(config_json));
            if (!out_dir.empty())
                cfg.out_dir = out_dir;
            return run_experiment(cfg);
        },
        py::arg("config_json"), py::arg("out_dir") = std::string(),
        "Run an experiment from a JSON config string; returns the number of failed internal checks.");
    m.def(
        "run_experiment_file",
        [](const std::string &path, const std::string &out_dir) {
            ExperimentConfig cfg = load_experiment(path);
            if (!out_dir.empty())
                cfg.out_dir = out_dir;
            return run_experiment(cfg);
        },
        py::arg("path"), py::arg("out_dir") = std::string());
}
