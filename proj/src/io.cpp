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
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>

#include "nfbeam/io.hpp"

namespace nfbeam
{

static std::ofstream open_out(const std::string &path)
{
    std::ofstream out(path, std::ios::binary); // binary keeps line endings stable across platforms
    if (!out)
        throw IOError("cannot open '" + path + "' for writing");
    out << std::setprecision(std::numeric_limits<double>::max_digits10);
    return out;
}

static std::ifstream open_in(const std::string &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IOError("cannot open '" + path + "' for reading");
    return in;
}

static void expect_magic(std::istream &in, const std::string &magic, const std::string &path)
{
    std::string line;
    if (!std::getline(in, line) || line != magic)
        throw IOError("'" + path + "' does not start with \"" + magic + "\"");
}

void save_weights_csv(const std::string &path, const Eigen::VectorXcd &w)
{
    std::ofstream out = open_out(path);
    out << "# nfbeam weights v1\n";
    out << "index,re,im\n";
    for (Eigen::Index i = 0; i < w.size(); ++i)
        out << i << "," << w[i].real() << "," << w[i].imag() << "\n";
    if (!out)
        throw IOError("write to '" + path + "' failed");
}

Eigen::VectorXcd load_weights_csv(const std::string &path)
{
    std::ifstream in = open_in(path);
    expect_magic(in, "# nfbeam weights v1", path);
    std::string line;
    if (!std::getline(in, line) || line != "index,re,im")
        throw IOError("'" + path + "' is missing the weights header row");

    std::vector<std::complex<double>> vals;
    while (std::getline(in, line))
    {
        if (line.empty())
            continue;
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream ss(line);
        long idx;
        double re, im;
        if (!(ss >> idx >> re >> im) || idx != (long)vals.size())
            throw IOError("'" + path + "' has a malformed weights row");
        vals.emplace_back(re, im);
    }
    Eigen::VectorXcd w((Eigen::Index)vals.size());
    for (std::size_t i = 0; i < vals.size(); ++i)
        w[(Eigen::Index)i] = vals[i];
    return w;
}

void save_field_csv(const std::string &path, const FieldRecord &rec)
{
    std::ofstream out = open_out(path);
    out << "# nfbeam field v1\n";
    out << "x,y,re,im\n";
    for (std::size_t c = 0; c < rec.xs.size(); ++c)
        for (Eigen::Index r = 0; r < rec.ys.size(); ++r)
        {
            const std::complex<double> v = rec.samples(r, (Eigen::Index)c);
            out << rec.xs[c] << "," << rec.ys[r] << "," << v.real() << "," << v.imag() << "\n";
        }
    if (!out)
        throw IOError("write to '" + path + "' failed");
}

void save_codebook(const std::string &path, const Codebook &cb)
{
    std::ofstream out = open_out(path);
    out << "# nfbeam codebook v1\n";
    out << "kind," << to_string(cb.kind) << "\n";
    out << "count," << cb.entries.size() << "\n";
    out << "theta,range,curvature,scale,decay\n";
    for (const BeamParams &p : cb.entries)
        out << p.theta << "," << p.range << "," << p.curvature << "," << p.scale << "," << p.decay << "\n";
    if (!out)
        throw IOError("write to '" + path + "' failed");
}

Codebook load_codebook(const std::string &path)
{
    std::ifstream in = open_in(path);
    expect_magic(in, "# nfbeam codebook v1", path);

    std::string line;
    if (!std::getline(in, line) || line.rfind("kind,", 0) != 0)
        throw IOError("'" + path + "' is missing the codebook kind");
    Codebook cb;
    cb.kind = beam_kind_from_string(line.substr(5));

    if (!std::getline(in, line) || line.rfind("count,", 0) != 0)
        throw IOError("'" + path + "' is missing the codebook count");
    const long count = std::stol(line.substr(6));

    if (!std::getline(in, line) || line != "theta,range,curvature,scale,decay")
        throw IOError("'" + path + "' is missing the codebook header row");

    while (std::getline(in, line))
    {
        if (line.empty())
            continue;
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream ss(line);
        BeamParams p;
        p.kind = cb.kind;
        if (!(ss >> p.theta >> p.range >> p.curvature >> p.scale >> p.decay))
            throw IOError("'" + path + "' has a malformed codebook row");
        cb.entries.push_back(p);
    }
    if ((long)cb.entries.size() != count)
        throw IOError("'" + path + "' count line disagrees with the number of rows");
    return cb;
}

void save_hybrid(const std::string &path, const HybridBeam &hb)
{
    std::ofstream out = open_out(path);
    out << "# nfbeam hybrid v1\n";
    out << "elements," << hb.analog.rows() << "\n";
    out << "chains," << hb.analog.cols() << "\n";
    out << "phase_bits," << hb.phase_bits << "\n";
    out << "rank_deficient," << (hb.rank_deficient ? 1 : 0) << "\n";
    out << "atoms";
    for (int a : hb.atoms)
        out << "," << a;
    out << "\n";
    out << "residual";
    for (double r : hb.residual)
        out << "," << r;
    out << "\n";
    out << "digital,re,im\n";
    for (Eigen::Index l = 0; l < hb.digital.size(); ++l)
        out << l << "," << hb.digital[l].real() << "," << hb.digital[l].imag() << "\n";
    out << "phase_index\n";
    for (Eigen::Index n = 0; n < hb.phase_index.rows(); ++n)
    {
        for (Eigen::Index l = 0; l < hb.phase_index.cols(); ++l)
            out << (l ? "," : "") << hb.phase_index(n, l);
        out << "\n";
    }
    if (!out)
        throw IOError("write to '" + path + "' failed");
}

HybridBeam load_hybrid(const std::string &path)
{
    std::ifstream in = open_in(path);
    expect_magic(in, "# nfbeam hybrid v1", path);

    const auto read_kv = [&](const char *key) -> std::string {
        std::string line;
        const std::string prefix = std::string(key) + ",";
        if (!std::getline(in, line) || line.rfind(prefix, 0) != 0)
            throw IOError("'" + path + "' is missing the '" + key + "' line");
        return line.substr(prefix.size());
    };

    HybridBeam hb;
    const int n = std::stoi(read_kv("elements"));
    const int chains = std::stoi(read_kv("chains"));
    hb.phase_bits = std::stoi(read_kv("phase_bits"));
    hb.rank_deficient = std::stoi(read_kv("rank_deficient")) != 0;
    if (n < 1 || chains < 1 || hb.phase_bits < 1)
        throw IOError("'" + path + "' holds inconsistent hybrid dimensions");

    std::string line;
    const auto split_csv = [](const std::string &text) {
        std::vector<std::string> parts;
        std::stringstream ss(text);
        std::string item;
        while (std::getline(ss, item, ','))
            parts.push_back(item);
        return parts;
    };

    if (!std::getline(in, line) || line.rfind("atoms", 0) != 0)
        throw IOError("'" + path + "' is missing the atoms line");
    for (const std::string &tok : split_csv(line.substr(6)))
        hb.atoms.push_back(std::stoi(tok));

    if (!std::getline(in, line) || line.rfind("residual", 0) != 0)
        throw IOError("'" + path + "' is missing the residual line");
    for (const std::string &tok : split_csv(line.substr(9)))
        hb.residual.push_back(std::stod(tok));

    if (!std::getline(in, line) || line != "digital,re,im")
        throw IOError("'" + path + "' is missing the digital header");
    hb.digital.resize(chains);
    for (int l = 0; l < chains; ++l)
    {
        if (!std::getline(in, line))
            throw IOError("'" + path + "' ends inside the digital block");
        const std::vector<std::string> parts = split_csv(line);
        if (parts.size() != 3 || std::stoi(parts[0]) != l)
            throw IOError("'" + path + "' has a malformed digital row");
        hb.digital[l] = {std::stod(parts[1]), std::stod(parts[2])};
    }

    if (!std::getline(in, line) || line != "phase_index")
        throw IOError("'" + path + "' is missing the phase_index block");
    hb.phase_index.resize(n, chains);
    for (int r = 0; r < n; ++r)
    {
        if (!std::getline(in, line))
            throw IOError("'" + path + "' ends inside the phase_index block");
        const std::vector<std::string> parts = split_csv(line);
        if ((int)parts.size() != chains)
            throw IOError("'" + path + "' has a malformed phase_index row");
        for (int l = 0; l < chains; ++l)
            hb.phase_index(r, l) = std::stoi(parts[(std::size_t)l]);
    }

    // reconstruct the quantized analog matrix from the stored levels
    const int levels = 1 << hb.phase_bits;
    const double step = 2.0 * M_PI / levels;
    const double amp = 1.0 / std::sqrt((double)n);
    hb.analog.resize(n, chains);
    for (int r = 0; r < n; ++r)
        for (int l = 0; l < chains; ++l)
        {
            const int k = hb.phase_index(r, l);
            if (k < 0 || k >= levels)
                throw IOError("'" + path + "' holds a phase level outside [0, 2^bits)");
            hb.analog(r, l) = std::polar(amp, k * step);
        }
    return hb;
}

void save_heatmap_pgm(const std::string &path, const Eigen::MatrixXd &db_values, double db_floor, double db_ceil)
{
    if (!(db_ceil > db_floor))
        throw ParamError("save_heatmap_pgm: db_ceil must exceed db_floor");
    std::ofstream out = open_out(path);
    out << "P5\n" << db_values.cols() << " " << db_values.rows() << "\n255\n";
    const double scale = 255.0 / (db_ceil - db_floor);
    for (Eigen::Index r = 0; r < db_values.rows(); ++r) // row r is y ascending
        for (Eigen::Index c = 0; c < db_values.cols(); ++c)
        {
            double v = (db_values(r, c) - db_floor) * scale;
            v = std::clamp(v, 0.0, 255.0);
            out.put((char)(unsigned char)std::lround(v));
        }
    if (!out)
        throw IOError("write to '" + path + "' failed");
}

} // namespace nfbeam
