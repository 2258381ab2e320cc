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

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include <doctest.h>

#include "nfbeam/hybrid.hpp"
#include "nfbeam/io.hpp"
#include "../support/fixtures.hpp"

using namespace nfbeam;
using nfbeam_tests::tiny_scenario;

namespace
{

std::filesystem::path work_file(const std::string &name)
{
    const std::filesystem::path dir = std::filesystem::temp_directory_path() / "nfbeam_io_tests";
    std::filesystem::create_directories(dir);
    return dir / name;
}

std::string slurp(const std::filesystem::path &p)
{
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void spit(const std::filesystem::path &p, const std::string &text)
{
    std::ofstream out(p, std::ios::binary);
    out << text;
}

} // namespace

TEST_CASE("weight vectors roundtrip exactly")
{
    std::mt19937_64 gen(31);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    Eigen::VectorXcd w(9);
    for (int i = 0; i < 9; ++i)
        w[i] = std::complex<double>(uni(gen) * 1e-7, uni(gen) * 1e3);

    const auto path = work_file("w.csv");
    save_weights_csv(path.string(), w);
    const Eigen::VectorXcd r = load_weights_csv(path.string());
    REQUIRE(r.size() == 9);
    for (int i = 0; i < 9; ++i)
        CHECK(r[i] == w[i]); // max_digits10 keeps doubles bit-exact through text

    CHECK_THROWS_AS((void)load_weights_csv(work_file("missing.csv").string()), IOError);

    spit(work_file("bad_magic.csv"), "# other file\nindex,re,im\n0,1,2\n");
    CHECK_THROWS_AS((void)load_weights_csv(work_file("bad_magic.csv").string()), IOError);

    spit(work_file("bad_row.csv"), "# nfbeam weights v1\nindex,re,im\n5,1,2\n");
    CHECK_THROWS_AS((void)load_weights_csv(work_file("bad_row.csv").string()), IOError);

    spit(work_file("bad_num.csv"), "# nfbeam weights v1\nindex,re,im\n0,one,2\n");
    CHECK_THROWS_AS((void)load_weights_csv(work_file("bad_num.csv").string()), IOError);
}

TEST_CASE("field table is written plane-major with one row per sample")
{
    FieldRecord rec;
    rec.xs = {0.0, 0.25};
    rec.ys = Eigen::VectorXd::LinSpaced(3, -0.1, 0.1);
    rec.samples.resize(3, 2);
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 2; ++c)
            rec.samples(r, c) = std::complex<double>(10 * c + r, -r);

    const auto path = work_file("field.csv");
    save_field_csv(path.string(), rec);

    std::ifstream in(path);
    std::string line;
    std::getline(in, line);
    CHECK(line == "# nfbeam field v1");
    std::getline(in, line);
    CHECK(line == "x,y,re,im");

    int rows = 0;
    double x, y, re, im;
    char comma;
    while (std::getline(in, line))
    {
        std::istringstream ss(line);
        ss >> x >> comma >> y >> comma >> re >> comma >> im;
        const int c = rows / 3, r = rows % 3; // all ys of plane 0 come first
        CHECK(x == rec.xs[(std::size_t)c]);
        CHECK(y == rec.ys[r]);
        CHECK(re == rec.samples(r, c).real());
        CHECK(im == rec.samples(r, c).imag());
        ++rows;
    }
    CHECK(rows == 6);
}

TEST_CASE("codebooks roundtrip with kind and count checked")
{
    CodebookSpec spec;
    spec.kind = BeamKind::nf_airy;
    spec.angle.count = 3;
    spec.distance.count = 2;
    spec.scale.count = 2;
    spec.decay.count = 2;
    const Codebook cb = assemble_codebook(spec);

    const auto path = work_file("book.csv");
    save_codebook(path.string(), cb);
    const Codebook r = load_codebook(path.string());

    CHECK(r.kind == cb.kind);
    REQUIRE(r.entries.size() == cb.entries.size());
    for (std::size_t i = 0; i < cb.entries.size(); ++i)
    {
        CHECK(r.entries[i].kind == BeamKind::nf_airy);
        CHECK(r.entries[i].theta == cb.entries[i].theta);
        CHECK(r.entries[i].range == cb.entries[i].range);
        CHECK(r.entries[i].curvature == cb.entries[i].curvature);
        CHECK(r.entries[i].scale == cb.entries[i].scale);
        CHECK(r.entries[i].decay == cb.entries[i].decay);
    }

    // tampered count must be rejected
    std::string text = slurp(path);
    const std::string key = "count," + std::to_string(cb.entries.size());
    text.replace(text.find(key), key.size(), "count,7");
    spit(work_file("bad_count.csv"), text);
    CHECK_THROWS_AS((void)load_codebook(work_file("bad_count.csv").string()), IOError);

    spit(work_file("bad_kind.csv"),
         "# nfbeam codebook v1\nkind,vortex\ncount,0\ntheta,range,curvature,scale,decay\n");
    CHECK_THROWS_AS((void)load_codebook(work_file("bad_kind.csv").string()), SpecError);
}

TEST_CASE("hybrid factorizations roundtrip including the reconstructed analog stage")
{
    std::mt19937_64 gen(41);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    Eigen::VectorXcd target(12);
    for (int i = 0; i < 12; ++i)
        target[i] = std::complex<double>(uni(gen), uni(gen));

    HybridOptions opt;
    opt.num_chains = 3;
    opt.phase_bits = 4;
    opt.oversampling = 2;
    const HybridBeam hb = omp_decompose(target, opt);

    const auto path = work_file("hybrid.csv");
    save_hybrid(path.string(), hb);
    const HybridBeam r = load_hybrid(path.string());

    CHECK(r.phase_bits == hb.phase_bits);
    CHECK(r.rank_deficient == hb.rank_deficient);
    CHECK(r.atoms == hb.atoms);
    REQUIRE(r.residual.size() == hb.residual.size());
    for (std::size_t i = 0; i < hb.residual.size(); ++i)
        CHECK(r.residual[i] == hb.residual[i]);
    CHECK(r.digital == hb.digital);
    CHECK(r.phase_index == hb.phase_index);
    CHECK((r.analog - hb.analog).norm() == 0.0); // same levels, same reconstruction

    // a stored level outside [0, 2^bits) must be rejected
    std::string text = slurp(path);
    const std::size_t block = text.find("phase_index\n");
    REQUIRE(block != std::string::npos);
    const std::size_t eol = text.find('\n', block + 12);
    const std::size_t comma = text.find(',', block + 12);
    text.replace(block + 12, std::min(eol, comma) - (block + 12), "99");
    spit(work_file("bad_hybrid.csv"), text);
    CHECK_THROWS_AS((void)load_hybrid(work_file("bad_hybrid.csv").string()), IOError);
}

TEST_CASE("heatmaps serialize as 8-bit PGM with clamped linear mapping")
{
    Eigen::MatrixXd db(2, 3);
    db << 0.0, 5.0, 10.0, -5.0, 20.0, 7.5;

    const auto path = work_file("map.pgm");
    save_heatmap_pgm(path.string(), db, 0.0, 10.0);

    const std::string bytes = slurp(path);
    const std::string header = "P5\n3 2\n255\n";
    REQUIRE(bytes.size() == header.size() + 6);
    CHECK(bytes.compare(0, header.size(), header) == 0);

    const unsigned char *px = (const unsigned char *)bytes.data() + header.size();
    CHECK(px[0] == 0);   // 0 dB at the floor
    CHECK(px[1] == 128); // 127.5 rounds away from zero
    CHECK(px[2] == 255); // at the ceiling
    CHECK(px[3] == 0);   // below the floor clamps
    CHECK(px[4] == 255); // above the ceiling clamps
    CHECK(px[5] == 191); // 7.5 dB -> 191.25 -> 191

    CHECK_THROWS_AS(save_heatmap_pgm(path.string(), db, 3.0, 3.0), ParamError);
}
