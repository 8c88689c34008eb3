// Copyright 2026 The QKT Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "qkt/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>

#include "qkt/errors.hpp"
#include "qkt/experiment.hpp"
#include "qkt/homsim.hpp"
#include "qkt/image_io.hpp"
#include "qkt/imaging.hpp"
#include "qkt/sequence_io.hpp"
#include "qkt/transforms.hpp"

namespace qkt::cli {

namespace {

using nlohmann::json;
using transforms::format_double;

class UsageError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

struct Context {
    std::vector<std::string> args;
    std::ostream &out;
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    std::string started_utc;
};

std::string utc_now() {
    const std::time_t t = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

void write_text_file(const std::string &path, const std::string &text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) {
        throw IoError("cannot write '" + path + "'");
    }
    f << text;
    if (!f) {
        throw IoError("write failed for '" + path + "'");
    }
}

std::string read_text_file(const std::string &path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) {
        throw IoError("cannot open '" + path + "'");
    }
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

json number_or_inf(double v) {
    if (std::isinf(v)) {
        return v > 0 ? "+inf" : "-inf";
    }
    return v;
}

void write_manifest(const Context &ctx, const std::string &path, const std::string &command, const json &config,
                    const std::optional<std::uint64_t> &seed, const std::vector<std::string> &outputs) {
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - ctx.start).count();
    json m{
        {"command", command},
        {"arguments", ctx.args},
        {"config", config},
        {"seed", seed ? json(*seed) : json(nullptr)},
        {"tool", "qkt"},
        {"tool_version", kVersion},
        {"outputs", outputs},
        {"started_utc", ctx.started_utc},
        {"wall_clock_seconds", wall},
    };
    write_text_file(path, m.dump(2) + "\n");
}

std::string statistics_csv(const homsim::PhotonStatistics &st) {
    std::ostringstream s;
    s << "k,probability,error\n";
    for (int k = 0; k <= st.S; ++k) {
        s << k << ',' << format_double(st.probabilities[k]) << ',' << format_double(st.errors[k]) << '\n';
    }
    return s.str();
}

// ---------------------------------------------------------------- transform

struct TransformArgs {
    std::string input;
    std::string kind = "kt";
    double alpha = 1.0;
    std::string output;
};

void cmd_transform(Context &ctx, const TransformArgs &a) {
    const transforms::ComplexSequence x = transforms::read_sequence_csv_file(a.input);
    const int S = static_cast<int>(x.size()) - 1;
    transforms::TransformKernel kernel;
    std::string kind = a.kind;
    std::transform(kind.begin(), kind.end(), kind.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (kind == "kt") {
        kernel = transforms::kt_kernel(S, a.alpha);
    } else if (kind == "dft") {
        kernel = transforms::dft_kernel(S);
    } else if (kind == "dfrft") {
        kernel = transforms::dfrft_kernel(S, a.alpha);
    } else {
        throw UsageError("--kind must be kt, dft or dfrft");
    }
    const transforms::ComplexSequence X = transforms::apply(kernel, x);
    std::ostringstream s;
    s << "k,re,im,abs2\n";
    for (int k = 0; k <= S; ++k) {
        s << k << ',' << format_double(X(k).real()) << ',' << format_double(X(k).imag()) << ','
          << format_double(std::norm(X(k))) << '\n';
    }
    write_text_file(a.output, s.str());
    const json config{{"input", a.input}, {"kind", kind}, {"alpha", a.alpha}, {"S", S}};
    write_manifest(ctx, a.output + ".manifest.json", "transform", config, std::nullopt, {a.output});
    ctx.out << "wrote " << a.output << " (S = " << S << ", kind = " << kind << ")\n";
}

// ---------------------------------------------------------------------- hom

struct HomArgs {
    std::optional<int> S;
    std::optional<int> l;
    double r = 0.5;
    double phi = -std::numbers::pi / 2;
    std::string input;
    std::string output;
    std::string qfunction;
    int n_theta = 64;
    int n_phi = 128;
};

void cmd_hom(Context &ctx, const HomArgs &a) {
    homsim::TwoModeFockState state;
    json config{{"r", a.r}, {"phi", a.phi}};
    if (!a.input.empty()) {
        state = homsim::TwoModeFockState::from_sequence(transforms::read_sequence_csv_file(a.input));
        config["input"] = a.input;
    } else {
        if (!a.S || !a.l) {
            throw UsageError("hom needs --S and --l, or --input");
        }
        if (*a.S < 0 || *a.l < 0 || *a.l > *a.S) {
            throw DomainError("need 0 <= l <= S, got S = " + std::to_string(*a.S) + ", l = " + std::to_string(*a.l));
        }
        state = homsim::TwoModeFockState::fock(*a.l, *a.S - *a.l);
        config["S"] = *a.S;
        config["l"] = *a.l;
    }
    const homsim::PhotonStatistics st = homsim::photon_statistics(state, {a.r, a.phi});
    std::vector<std::string> outputs{a.output};
    std::string qtext;
    if (!a.qfunction.empty()) {
        const homsim::BeamSplitterSpec bs{a.r, a.phi};
        const Eigen::VectorXcd rotated = homsim::bs_amplitude_matrix(state.S, bs) * state.amplitudes;
        const homsim::QFunction q =
            homsim::dicke_qfunction({state.S, rotated}, homsim::SphereGrid{a.n_theta, a.n_phi});
        std::ostringstream s;
        s << "theta,phi,q\n";
        for (int i = 0; i < a.n_theta; ++i) {
            for (int j = 0; j < a.n_phi; ++j) {
                s << format_double(q.grid.theta(i)) << ',' << format_double(q.grid.phi(j)) << ','
                  << format_double(q.values(i, j)) << '\n';
            }
        }
        qtext = s.str();
        outputs.push_back(a.qfunction);
        config["qfunction"] = {{"n_theta", a.n_theta}, {"n_phi", a.n_phi}};
    }
    write_text_file(a.output, statistics_csv(st));
    if (!a.qfunction.empty()) {
        write_text_file(a.qfunction, qtext);
    }
    write_manifest(ctx, a.output + ".manifest.json", "hom", config, std::nullopt, outputs);
    ctx.out << "wrote " << a.output << " (S = " << st.S << ")\n";
}

// --------------------------------------------------------------- experiment

struct ExperimentArgs {
    std::string config;
    std::optional<std::uint64_t> shots;
    std::optional<std::uint64_t> seed;
    std::vector<int> select;
    std::string output;
    std::string stats;
};

void cmd_experiment(Context &ctx, const ExperimentArgs &a) {
    if (a.shots && *a.shots == 0) {
        throw UsageError("--shots must be at least 1");
    }
    if (!a.select.empty() && a.select.size() != 2) {
        throw UsageError("--select takes two values: n1 n4");
    }
    experiment::ExperimentConfig c = experiment::config_from_json(read_text_file(a.config));
    if (a.shots) {
        c.shots = *a.shots;
    }
    if (a.seed) {
        c.seed = *a.seed;
    }
    c.validate();
    const experiment::EventHistogram hist = experiment::run_experiment(c);

    std::vector<std::string> outputs{a.output, a.output + ".json"};
    std::string stats_text;
    std::string stats_path;
    if (!a.select.empty()) {
        const homsim::PhotonStatistics st = experiment::estimate_statistics(hist, a.select[0], a.select[1]);
        stats_text = statistics_csv(st);
        stats_path = a.stats.empty() ? a.output + ".stats.csv" : a.stats;
        outputs.push_back(stats_path);
    }

    std::ostringstream h;
    experiment::write_histogram_csv(h, hist);
    write_text_file(a.output, h.str());
    write_text_file(a.output + ".json", experiment::histogram_sidecar_json(hist) + "\n");
    if (!stats_path.empty()) {
        write_text_file(stats_path, stats_text);
    }
    json config = json::parse(experiment::config_to_json(c));
    if (!a.select.empty()) {
        config["select"] = {{"n1", a.select[0]}, {"n4", a.select[1]}};
    }
    write_manifest(ctx, a.output + ".manifest.json", "experiment", config, c.seed, outputs);
    const experiment::SelectionSummary s = experiment::post_selection_summary(hist);
    ctx.out << "shots " << hist.shots << ", post-selection kept " << s.kept << ", discarded " << s.discarded << "\n";
}

// -------------------------------------------------------------------- image

struct ImageArgs {
    std::string input;
    std::string kspace;
    std::string method = "kt";
    double alpha = 1.0;
    double noise = 0.0;
    std::uint64_t seed = 0;
    bool compare = false;
    std::string output;
    std::string report;
    std::string save_kspace;
};

void cmd_image(Context &ctx, const ImageArgs &a) {
    if (a.input.empty() == a.kspace.empty()) {
        throw UsageError("image needs exactly one of --input or --kspace");
    }
    if (a.compare && !a.kspace.empty()) {
        throw UsageError("--compare needs a real-space --input");
    }
    const imaging::Method method = imaging::parse_method(a.method);
    const std::string report_path = a.report.empty() ? a.output + ".report.json" : a.report;
    const imaging::SsimOptions ssim;
    json report{
        {"noise", a.noise},
        {"seed", a.seed},
        {"alpha", a.alpha},
        {"reconstruction_method", imaging::to_string(method)},
        {"ssim_parameters",
         {{"window", ssim.window}, {"stride", 1}, {"K1", ssim.K1}, {"K2", ssim.K2}, {"L", "reference dynamic range"}}},
        {"psnr_peak", "reference dynamic range"},
    };
    std::vector<std::string> outputs{a.output, report_path};

    Eigen::MatrixXd recon;
    int max_value = 255;
    std::optional<imaging::ImageGrid> noisy_k;
    if (!a.kspace.empty()) {
        const imaging::ImageGrid k = imaging::read_kspace_file(a.kspace);
        const imaging::ImageGrid kn = imaging::add_kspace_noise(k, a.noise, a.seed);
        double residual = 0.0;
        recon = imaging::reconstruct(kn, method, a.alpha, &residual).pixels.real();
        report["methods"][imaging::to_string(method)] = {{"imag_residual_rms", residual}};
        report["input"] = {{"kspace", a.kspace}, {"width", k.width()}, {"height", k.height()}};
        noisy_k = kn;
    } else {
        const imaging::PgmImage pgm = imaging::read_pgm_file(a.input);
        max_value = pgm.max_value;
        const imaging::ImageGrid ref = imaging::ImageGrid::real(pgm.pixels);
        report["input"] = {{"pgm", a.input}, {"width", ref.width()}, {"height", ref.height()}, {"maxval", pgm.max_value}};
        std::vector<imaging::Method> methods{method};
        if (a.compare) {
            methods = {imaging::Method::KT, imaging::Method::FFT};
        }
        for (imaging::Method m : methods) {
            const imaging::ImageGrid k = imaging::forward_to_kspace(ref, m, a.alpha);
            const imaging::ImageGrid kn = imaging::add_kspace_noise(k, a.noise, a.seed);
            double residual = 0.0;
            const imaging::ImageGrid out = imaging::reconstruct(kn, m, a.alpha, &residual);
            const imaging::QualityReport q = imaging::quality(ref, out, ssim);
            report["methods"][imaging::to_string(m)] = {
                {"mse", q.mse}, {"psnr", number_or_inf(q.psnr)}, {"ssim", q.ssim}, {"imag_residual_rms", residual}};
            if (m == method) {
                recon = out.pixels.real();
                noisy_k = kn;
            }
        }
    }
    imaging::write_pgm_file(a.output, recon, max_value);
    write_text_file(report_path, report.dump(2) + "\n");
    if (!a.save_kspace.empty()) {
        imaging::write_kspace_file(a.save_kspace, *noisy_k);
        outputs.push_back(a.save_kspace);
    }
    json config{{"method", a.method}, {"alpha", a.alpha}, {"noise", a.noise}, {"compare", a.compare}};
    config["input"] = a.input.empty() ? a.kspace : a.input;
    write_manifest(ctx, a.output + ".manifest.json", "image", config, a.seed, outputs);
    ctx.out << report.dump(2) << "\n";
}

// -------------------------------------------------------------------- sweep

struct SweepArgs {
    int S = 0;
    int l = 0;
    std::vector<double> r;
    int steps = 0;
    double phi = -std::numbers::pi / 2;
    std::string output_dir;
};

void cmd_sweep(Context &ctx, const SweepArgs &a) {
    if (a.r.empty() == (a.steps == 0)) {
        throw UsageError("sweep needs exactly one of --r or --steps");
    }
    if (a.steps < 0) {
        throw UsageError("--steps must be positive");
    }
    if (a.S < 0 || a.l < 0 || a.l > a.S) {
        throw DomainError("need 0 <= l <= S, got S = " + std::to_string(a.S) + ", l = " + std::to_string(a.l));
    }
    std::vector<double> grid = a.r;
    if (a.steps > 0) {
        for (int i = 0; i <= a.steps; ++i) {
            grid.push_back(static_cast<double>(i) / a.steps);
        }
    }
    const homsim::TwoModeFockState state = homsim::TwoModeFockState::fock(a.l, a.S - a.l);
    std::vector<std::pair<std::string, std::string>> files;
    for (double r : grid) {
        const homsim::PhotonStatistics st = homsim::photon_statistics(state, {r, a.phi});
        char name[96];
        std::snprintf(name, sizeof(name), "p_S%d_l%d_r%.4f.csv", a.S, a.l, r);
        files.emplace_back((std::filesystem::path(a.output_dir) / name).string(), statistics_csv(st));
    }
    std::error_code ec;
    std::filesystem::create_directories(a.output_dir, ec);
    if (ec) {
        throw IoError("cannot create directory '" + a.output_dir + "': " + ec.message());
    }
    std::vector<std::string> outputs;
    for (const auto &[path, text] : files) {
        write_text_file(path, text);
        outputs.push_back(path);
    }
    json config{{"S", a.S}, {"l", a.l}, {"phi", a.phi}, {"r", grid}};
    write_manifest(ctx, (std::filesystem::path(a.output_dir) / "sweep.manifest.json").string(), "sweep", config,
                   std::nullopt, outputs);
    ctx.out << "wrote " << outputs.size() << " statistics files to " << a.output_dir << "\n";
}

}  // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Fractional Kravchuk transforms and multiphoton beam-splitter interference", "qkt"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    TransformArgs ta;
    auto *transform = app.add_subcommand("transform", "Apply a KT, DFT or DFRFT to a sequence CSV");
    transform->add_option("--input", ta.input, "Sequence CSV with header index,re,im")->required();
    transform->add_option("--kind", ta.kind, "kt, dft or dfrft")->capture_default_str();
    transform->add_option("--alpha", ta.alpha, "Fractional order")->capture_default_str();
    transform->add_option("--output", ta.output, "Output CSV k,re,im,abs2")->required();

    HomArgs ha;
    auto *hom = app.add_subcommand("hom", "Exact photon statistics behind a beam splitter");
    hom->add_option("--S", ha.S, "Total photon number");
    hom->add_option("--l", ha.l, "Photons in the first input mode");
    hom->add_option("--r", ha.r, "Reflectivity in [0,1]")->capture_default_str();
    hom->add_option("--phi", ha.phi, "Beam-splitter phase")->capture_default_str();
    hom->add_option("--input", ha.input, "Superposition as sequence CSV over |l, S-l>");
    hom->add_option("--output", ha.output, "Statistics CSV k,probability,error")->required();
    hom->add_option("--qfunction", ha.qfunction, "Also write the Q-function of the output state");
    hom->add_option("--ntheta", ha.n_theta, "Q-function grid rows")->capture_default_str();
    hom->add_option("--nphi", ha.n_phi, "Q-function grid columns")->capture_default_str();

    ExperimentArgs ea;
    auto *exp = app.add_subcommand("experiment", "Monte-Carlo run of the four-detector setup");
    exp->add_option("--config", ea.config, "Config JSON")->required();
    exp->add_option("--shots", ea.shots, "Override the number of shots");
    exp->add_option("--seed", ea.seed, "Override the seed");
    exp->add_option("--select", ea.select, "Post-select on herald counts n1 n4")->expected(2);
    exp->add_option("--output", ea.output, "Histogram CSV n1,n2,n3,n4,count")->required();
    exp->add_option("--stats", ea.stats, "Estimated statistics CSV (default <output>.stats.csv)");

    ImageArgs ia;
    auto *image = app.add_subcommand("image", "KT vs FFT reconstruction under k-space noise");
    image->add_option("--input", ia.input, "Real-space PGM (P5)");
    image->add_option("--kspace", ia.kspace, "Raw k-space (JSON header + c64le)");
    image->add_option("--method", ia.method, "kt or fft")->capture_default_str();
    image->add_option("--alpha", ia.alpha, "KT order")->capture_default_str();
    image->add_option("--noise", ia.noise, "k-space noise level (fraction of RMS)")->capture_default_str();
    image->add_option("--seed", ia.seed, "Noise seed")->capture_default_str();
    image->add_flag("--compare", ia.compare, "Report both methods");
    image->add_option("--output", ia.output, "Reconstruction PGM")->required();
    image->add_option("--report", ia.report, "QualityReport JSON (default <output>.report.json)");
    image->add_option("--save-kspace", ia.save_kspace, "Write the noisy k-space of the chosen method");

    SweepArgs sa;
    auto *sweep = app.add_subcommand("sweep", "Statistics of |l, S-l> over a reflectivity grid");
    sweep->add_option("--S", sa.S, "Total photon number")->required();
    sweep->add_option("--l", sa.l, "Photons in the first input mode")->required();
    sweep->add_option("--r", sa.r, "Reflectivities")->delimiter(',');
    sweep->add_option("--steps", sa.steps, "Uniform grid of steps+1 points on [0,1]");
    sweep->add_option("--phi", sa.phi, "Beam-splitter phase")->capture_default_str();
    sweep->add_option("--output-dir", sa.output_dir, "Directory for the statistics files")->required();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kSuccess : kUsage;
    }

    Context ctx{args, out, std::chrono::steady_clock::now(), utc_now()};
    try {
        if (transform->parsed()) {
            cmd_transform(ctx, ta);
        } else if (hom->parsed()) {
            cmd_hom(ctx, ha);
        } else if (exp->parsed()) {
            cmd_experiment(ctx, ea);
        } else if (image->parsed()) {
            cmd_image(ctx, ia);
        } else if (sweep->parsed()) {
            cmd_sweep(ctx, sa);
        }
    } catch (const UsageError &e) {
        err << "usage error: " << e.what() << "\n";
        return kUsage;
    } catch (const ParseError &e) {
        err << "parse error: " << e.what() << "\n";
        return kIo;
    } catch (const FormatError &e) {
        err << "format error: " << e.what() << "\n";
        return kIo;
    } catch (const IoError &e) {
        err << "I/O error: " << e.what() << "\n";
        return kIo;
    } catch (const Error &e) {
        err << "error: " << e.what() << "\n";
        return kDomain;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << "\n";
        return kDomain;
    }
    return kSuccess;
}

}  // namespace qkt::cli
