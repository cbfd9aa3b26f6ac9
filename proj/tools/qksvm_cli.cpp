// Command-line front end. Talks to the library exclusively through the C
// interface in qksvm/qksvm.h.
//
// Exit codes: 0 success, 2 usage error, 3 data error, 4 numeric error.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qksvm/qksvm.h"

using nlohmann::json;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitData = 3;
constexpr int kExitNumeric = 4;

struct CliError {
    int code;
    std::string message;
};

[[noreturn]] void die(int code, const std::string& message) {
    throw CliError{code, message};
}

// Library failures: invalid arguments surface as usage errors by default
// (most arguments come straight from flags); call sites dealing with file
// contents pass kExitData instead.
void check(qksvm_status st, int invalid_code = kExitUsage) {
    if (st == QKSVM_OK) return;
    int code = kExitNumeric;
    if (st == QKSVM_ERROR_INVALID_ARGUMENT) code = invalid_code;
    if (st == QKSVM_ERROR_DATA) code = kExitData;
    die(code, qksvm_last_error());
}

// RAII wrappers over the opaque handles.
template <typename T, void (*Destroy)(T*)>
struct Handle {
    T* ptr = nullptr;
    Handle() = default;
    explicit Handle(T* p) : ptr(p) {}
    ~Handle() { reset(); }
    Handle(const Handle&) = delete;
    Handle& operator=(const Handle&) = delete;
    Handle(Handle&& o) noexcept : ptr(o.ptr) { o.ptr = nullptr; }
    Handle& operator=(Handle&& o) noexcept {
        if (this != &o) {
            reset();
            ptr = o.ptr;
            o.ptr = nullptr;
        }
        return *this;
    }
    void reset() {
        if (ptr) Destroy(ptr);
        ptr = nullptr;
    }
    T** out() {
        reset();
        return &ptr;
    }
    T* get() const { return ptr; }
    explicit operator bool() const { return ptr != nullptr; }
};

using DatasetHandle = Handle<qksvm_dataset, qksvm_dataset_destroy>;
using KernelHandle = Handle<qksvm_kernel, qksvm_kernel_destroy>;
using GramHandle = Handle<qksvm_gram, qksvm_gram_destroy>;
using ModelHandle = Handle<qksvm_model, qksvm_model_destroy>;

/* ------------------------------------------------------------------ */
/* CSV                                                                 */

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::stringstream ss(line);
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    return cells;
}

std::string trimmed(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

double parse_cell(const std::string& cell, std::size_t row, std::size_t col) {
    const std::string t = trimmed(cell);
    if (t.empty()) die(kExitData, "csv: empty cell at row " + std::to_string(row) +
                                      ", column " + std::to_string(col));
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(t, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != t.size())
        die(kExitData, "csv: non-numeric cell '" + t + "' at row " + std::to_string(row) +
                           ", column " + std::to_string(col));
    return v;
}

struct CsvDataset {
    std::vector<double> features; // row-major n x p
    std::vector<int> labels;      // empty when the file has no y column
    std::size_t n = 0;
    std::size_t p = 0;
};

// Header row required; the label column is the one literally named "y".
CsvDataset load_csv(const std::string& path, bool require_labels) {
    std::ifstream in(path);
    if (!in) die(kExitData, "cannot open '" + path + "'");

    std::string line;
    if (!std::getline(in, line)) die(kExitData, "'" + path + "': empty file");
    const auto header = split_csv_line(line);
    std::ptrdiff_t label_col = -1;
    for (std::size_t c = 0; c < header.size(); ++c)
        if (trimmed(header[c]) == "y") label_col = static_cast<std::ptrdiff_t>(c);
    if (require_labels && label_col < 0)
        die(kExitData, "'" + path + "': missing label column 'y' in header");

    CsvDataset out;
    out.p = header.size() - (label_col >= 0 ? 1 : 0);
    if (out.p == 0) die(kExitData, "'" + path + "': no feature columns");

    std::size_t row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (trimmed(line).empty()) continue;
        const auto cells = split_csv_line(line);
        if (cells.size() != header.size())
            die(kExitData, "'" + path + "': row " + std::to_string(row) + " has " +
                               std::to_string(cells.size()) + " cells, header has " +
                               std::to_string(header.size()));
        for (std::size_t c = 0; c < cells.size(); ++c) {
            const double v = parse_cell(cells[c], row, c + 1);
            if (static_cast<std::ptrdiff_t>(c) == label_col) {
                if (v != 1.0 && v != -1.0)
                    die(kExitData, "'" + path + "': labels must be -1 or +1, got '" +
                                       trimmed(cells[c]) + "' at row " + std::to_string(row));
                out.labels.push_back(static_cast<int>(v));
            } else {
                out.features.push_back(v);
            }
        }
        ++out.n;
    }
    if (out.n == 0) die(kExitData, "'" + path + "': no data rows");
    return out;
}

DatasetHandle dataset_from_csv(const std::string& path) {
    const CsvDataset csv = load_csv(path, true);
    DatasetHandle d;
    check(qksvm_dataset_create(csv.features.data(), csv.labels.data(), csv.n, csv.p, d.out()),
          kExitData);
    int ok = 0;
    char report[1024];
    check(qksvm_dataset_validate(d.get(), &ok, report, sizeof(report)), kExitData);
    if (!ok) die(kExitData, "'" + path + "': invalid dataset\n" + std::string(report));
    if (report[0] != '\0') std::cerr << report;
    return d;
}

/* ------------------------------------------------------------------ */
/* Complex literals: "1", "-0.5", "i", "-i", "2i", "1+2i", "0.5-0.3i"  */

std::complex<double> parse_complex(std::string text) {
    std::string t;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch))) t += ch;
    if (t.empty()) die(kExitUsage, "empty complex literal");

    auto parse_real = [](const std::string& s, bool imag_unit_ok) -> double {
        if (imag_unit_ok) {
            if (s.empty() || s == "+") return 1.0;
            if (s == "-") return -1.0;
        }
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(s, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != s.size()) die(kExitUsage, "bad complex literal component '" + s + "'");
        return v;
    };

    // split position: a '+'/'-' that is not leading and not an exponent sign
    std::size_t split = std::string::npos;
    for (std::size_t k = 1; k < t.size(); ++k) {
        if ((t[k] == '+' || t[k] == '-') && t[k - 1] != 'e' && t[k - 1] != 'E')
            split = k; // keep the last one: handles "1e-3-2e-4i"
    }
    if (t.back() == 'i') {
        const std::string imag_part = t.substr(0, t.size() - 1);
        if (split == std::string::npos)
            return {0.0, parse_real(imag_part, true)};
        return {parse_real(t.substr(0, split), false),
                parse_real(imag_part.substr(split), true)};
    }
    if (split != std::string::npos && t.find('i') != std::string::npos)
        die(kExitUsage, "bad complex literal '" + text + "'");
    return {parse_real(t, false), 0.0};
}

/* ------------------------------------------------------------------ */
/* Kernel flags                                                        */

struct KernelFlags {
    std::string family = "gauss";
    int degree = 2;
    double sigma = 1.0;
    double ou_gamma = 1.0;
    double sig_alpha = 0.0;
    double sig_beta = 1.0;
    double gamma_ads = 1.0;
    double disk_scale = 0.5;
    double nu = 1.0;
    int lag_n = 0;
    double encode_scale = 1.0;

    void attach(CLI::App* cmd) {
        cmd->add_option("--kernel", family, "kernel family")
            ->check(CLI::IsMember({"linear", "poly", "gauss", "ou", "sigmoid", "ads", "pt",
                                   "laguerre-cs"}));
        cmd->add_option("--degree", degree, "polynomial degree");
        cmd->add_option("--sigma", sigma, "gaussian width");
        cmd->add_option("--ou-gamma", ou_gamma, "ornstein-uhlenbeck length scale");
        cmd->add_option("--sig-alpha", sig_alpha, "sigmoid offset");
        cmd->add_option("--sig-beta", sig_beta, "sigmoid slope");
        cmd->add_option("--gamma-ads", gamma_ads, "disk kernel exponent (> 1/2)");
        cmd->add_option("--disk-scale", disk_scale, "disk embedding scale");
        cmd->add_option("--nu", nu, "bessel kernel order");
        cmd->add_option("--lag-n", lag_n, "laguerre kernel index");
        cmd->add_option("--encode-scale", encode_scale, "amplitude encoding scale");
    }

    KernelHandle build() const {
        KernelHandle k;
        if (family == "linear")
            check(qksvm_kernel_linear(k.out()));
        else if (family == "poly")
            check(qksvm_kernel_polynomial(degree, k.out()));
        else if (family == "gauss")
            check(qksvm_kernel_gaussian(sigma, k.out()));
        else if (family == "ou")
            check(qksvm_kernel_ornstein_uhlenbeck(ou_gamma, k.out()));
        else if (family == "sigmoid")
            check(qksvm_kernel_sigmoid(sig_alpha, sig_beta, k.out()));
        else if (family == "ads")
            check(qksvm_kernel_ads(gamma_ads, disk_scale, k.out()));
        else if (family == "pt")
            check(qksvm_kernel_poschl_teller(nu, encode_scale, k.out()));
        else if (family == "laguerre-cs")
            check(qksvm_kernel_laguerre_cs(lag_n, encode_scale, k.out()));
        else
            die(kExitUsage, "unknown kernel family '" + family + "'");
        return k;
    }
};

/* ------------------------------------------------------------------ */
/* Model files                                                         */

json kernel_to_json(const qksvm_kernel* k) {
    double p0 = 0.0, p1 = 0.0;
    check(qksvm_kernel_get_params(k, &p0, &p1));
    json j;
    switch (qksvm_kernel_get_family(k)) {
        case QKSVM_KERNEL_LINEAR: j["family"] = "linear"; break;
        case QKSVM_KERNEL_POLYNOMIAL:
            j["family"] = "poly";
            j["degree"] = static_cast<int>(p0);
            break;
        case QKSVM_KERNEL_GAUSSIAN:
            j["family"] = "gauss";
            j["sigma"] = p0;
            break;
        case QKSVM_KERNEL_ORNSTEIN_UHLENBECK:
            j["family"] = "ou";
            j["gamma"] = p0;
            break;
        case QKSVM_KERNEL_SIGMOID:
            j["family"] = "sigmoid";
            j["alpha"] = p0;
            j["beta"] = p1;
            break;
        case QKSVM_KERNEL_ADS:
            j["family"] = "ads";
            j["gamma"] = p0;
            j["disk_scale"] = p1;
            break;
        case QKSVM_KERNEL_POSCHL_TELLER:
            j["family"] = "pt";
            j["nu"] = p0;
            j["encode_scale"] = p1;
            break;
        case QKSVM_KERNEL_LAGUERRE_CS:
            j["family"] = "laguerre-cs";
            j["n"] = static_cast<int>(p0);
            j["encode_scale"] = p1;
            break;
        case QKSVM_KERNEL_SUM:
        case QKSVM_KERNEL_PRODUCT: {
            j["family"] =
                qksvm_kernel_get_family(k) == QKSVM_KERNEL_SUM ? "sum" : "product";
            KernelHandle left, right;
            check(qksvm_kernel_get_child(k, 0, left.out()));
            check(qksvm_kernel_get_child(k, 1, right.out()));
            j["left"] = kernel_to_json(left.get());
            j["right"] = kernel_to_json(right.get());
            break;
        }
        default: die(kExitData, "model kernel has an unknown family tag");
    }
    return j;
}

KernelHandle kernel_from_json(const json& j) {
    const std::string family = j.at("family").get<std::string>();
    KernelHandle k;
    if (family == "linear")
        check(qksvm_kernel_linear(k.out()), kExitData);
    else if (family == "poly")
        check(qksvm_kernel_polynomial(j.at("degree").get<int>(), k.out()), kExitData);
    else if (family == "gauss")
        check(qksvm_kernel_gaussian(j.at("sigma").get<double>(), k.out()), kExitData);
    else if (family == "ou")
        check(qksvm_kernel_ornstein_uhlenbeck(j.at("gamma").get<double>(), k.out()),
              kExitData);
    else if (family == "sigmoid")
        check(qksvm_kernel_sigmoid(j.at("alpha").get<double>(), j.at("beta").get<double>(),
                                   k.out()),
              kExitData);
    else if (family == "ads")
        check(qksvm_kernel_ads(j.at("gamma").get<double>(), j.at("disk_scale").get<double>(),
                               k.out()),
              kExitData);
    else if (family == "pt")
        check(qksvm_kernel_poschl_teller(j.at("nu").get<double>(),
                                         j.at("encode_scale").get<double>(), k.out()),
              kExitData);
    else if (family == "laguerre-cs")
        check(qksvm_kernel_laguerre_cs(j.at("n").get<int>(),
                                       j.at("encode_scale").get<double>(), k.out()),
              kExitData);
    else if (family == "sum" || family == "product") {
        KernelHandle left = kernel_from_json(j.at("left"));
        KernelHandle right = kernel_from_json(j.at("right"));
        if (family == "sum")
            check(qksvm_kernel_sum(left.get(), right.get(), k.out()), kExitData);
        else
            check(qksvm_kernel_product(left.get(), right.get(), k.out()), kExitData);
    } else {
        die(kExitData, "model file: unknown kernel family '" + family + "'");
    }
    return k;
}

struct TrainMeta {
    uint64_t seed = 0;
    std::string solver = "smo";
    uint64_t shots = 0;
    std::string provenance = "exact";
};

void save_model(const std::string& path, const qksvm_model* m, const TrainMeta& meta) {
    const size_t n_sv = qksvm_model_num_sv(m);
    const size_t p = qksvm_model_dim(m);
    std::vector<double> points(n_sv * p);
    std::vector<int> labels(n_sv);
    std::vector<double> alphas(n_sv);
    check(qksvm_model_support(m, points.data(), labels.data(), alphas.data()));
    KernelHandle k;
    check(qksvm_model_get_kernel(m, k.out()));

    json j;
    j["format_version"] = 1;
    j["kernel"] = kernel_to_json(k.get());
    j["C"] = qksvm_model_cost(m);
    j["bias"] = qksvm_model_bias(m);
    j["alphas"] = alphas;
    json pts = json::array();
    for (size_t s = 0; s < n_sv; ++s)
        pts.push_back(std::vector<double>(points.begin() + s * p,
                                          points.begin() + (s + 1) * p));
    j["support_points"] = pts;
    j["support_labels"] = labels;
    j["meta"] = {{"seed", meta.seed},
                 {"solver", meta.solver},
                 {"shots", meta.shots},
                 {"provenance", meta.provenance}};

    std::ofstream out(path);
    if (!out) die(kExitData, "cannot write '" + path + "'");
    out << j.dump(2) << "\n";
}

ModelHandle load_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) die(kExitData, "cannot open model file '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        die(kExitData, "model file '" + path + "': " + e.what());
    }
    try {
        if (j.at("format_version").get<int>() != 1)
            die(kExitData, "model file '" + path + "': unsupported format version");
        KernelHandle k = kernel_from_json(j.at("kernel"));
        const auto alphas = j.at("alphas").get<std::vector<double>>();
        const auto labels = j.at("support_labels").get<std::vector<int>>();
        const auto pts = j.at("support_points");
        const size_t n_sv = alphas.size();
        if (labels.size() != n_sv || pts.size() != n_sv)
            die(kExitData, "model file '" + path + "': inconsistent support arrays");
        size_t p = 0;
        std::vector<double> flat;
        for (size_t s = 0; s < n_sv; ++s) {
            const auto row = pts[s].get<std::vector<double>>();
            if (s == 0) p = row.size();
            if (row.size() != p)
                die(kExitData, "model file '" + path + "': ragged support points");
            flat.insert(flat.end(), row.begin(), row.end());
        }
        ModelHandle m;
        check(qksvm_model_create(k.get(), j.at("C").get<double>(), j.at("bias").get<double>(),
                                 flat.data(), labels.data(), alphas.data(), n_sv, p, m.out()),
              kExitData);
        return m;
    } catch (const json::exception& e) {
        die(kExitData, "model file '" + path + "': " + e.what());
    }
}

/* ------------------------------------------------------------------ */
/* train                                                               */

struct TrainArgs {
    std::string data_path;
    std::string out_path;
    KernelFlags kernel;
    std::string solver = "smo";
    std::string gram = "exact";
    double c = 1.0;
    double reg = 1.0;
    double tol = 1e-3;
    int max_passes = 10000;
    uint64_t shots = 0;
    int threads = 0;
    std::optional<uint64_t> seed;
    CLI::Option* kernel_opt = nullptr;
};

GramHandle build_gram(const TrainArgs& a, const qksvm_dataset* d, const qksvm_kernel* k) {
    GramHandle g;
    if (a.gram == "exact") {
        check(qksvm_gram_exact(k, d, a.threads, g.out()), kExitData);
    } else if (a.gram == "povm") {
        if (a.kernel.family != "gauss")
            die(kExitUsage, "--gram povm estimates the gaussian kernel; use --kernel gauss");
        if (a.shots == 0) die(kExitUsage, "--gram povm requires --shots");
        if (!a.seed) die(kExitUsage, "--gram povm requires an explicit --seed");
        GramHandle raw;
        check(qksvm_gram_povm(d, a.kernel.sigma, a.shots, *a.seed, a.threads, raw.out()),
              kExitData);
        check(qksvm_gram_psd_repair(raw.get(), g.out()), kExitData);
    } else if (a.gram == "ptrace") {
        if (a.kernel_opt->count() > 0 && a.kernel.family != "linear")
            die(kExitUsage, "--gram ptrace produces the linear-kernel gram; drop --kernel or "
                            "use --kernel linear");
        check(qksvm_gram_partial_trace(d, g.out()), kExitData);
    } else {
        die(kExitUsage, "unknown --gram mode '" + a.gram + "'");
    }
    return g;
}

int cmd_train(const TrainArgs& a) {
    DatasetHandle d = dataset_from_csv(a.data_path);

    KernelHandle k;
    if (a.gram == "ptrace")
        check(qksvm_kernel_linear(k.out()));
    else
        k = a.kernel.build();

    GramHandle g = build_gram(a, d.get(), k.get());

    ModelHandle m;
    TrainMeta meta;
    meta.seed = a.seed.value_or(0);
    meta.shots = a.shots;
    meta.solver = a.solver;
    switch (qksvm_gram_get_kind(g.get())) {
        case QKSVM_GRAM_SHOT_ESTIMATED: meta.provenance = "shot-estimated"; break;
        case QKSVM_GRAM_PARTIAL_TRACE: meta.provenance = "partial-trace"; break;
        default: meta.provenance = "exact"; break;
    }

    if (a.solver == "smo") {
        check(qksvm_train_smo(g.get(), d.get(), a.c, a.tol, a.max_passes, meta.seed, m.out()));
    } else if (a.solver == "lssvm") {
        check(qksvm_train_lssvm(g.get(), d.get(), a.reg, m.out()));
    } else {
        die(kExitUsage, "unknown solver '" + a.solver + "'");
    }

    double objective = 0.0, kkt_worst = 0.0;
    check(qksvm_model_train_info(m.get(), &objective, &kkt_worst));
    std::printf("trained %s model on %zu points (dim %zu)\n", a.solver.c_str(),
                qksvm_dataset_size(d.get()), qksvm_dataset_dim(d.get()));
    std::printf("support vectors: %zu / %zu\n", qksvm_model_num_sv(m.get()),
                qksvm_dataset_size(d.get()));
    std::printf("dual objective: %.12g\n", objective);
    if (a.solver == "smo") std::printf("worst KKT violation: %.3e\n", kkt_worst);
    std::printf("gram: %s\n", meta.provenance.c_str());

    save_model(a.out_path, m.get(), meta);
    std::printf("model written to %s\n", a.out_path.c_str());
    return 0;
}

/* ------------------------------------------------------------------ */
/* predict                                                             */

int cmd_predict(const std::string& model_path, const std::string& data_path,
                const std::string& out_path) {
    ModelHandle m = load_model(model_path);
    const CsvDataset csv = load_csv(data_path, false);
    const size_t model_dim = qksvm_model_dim(m.get());
    if (model_dim != 0 && csv.p != model_dim)
        die(kExitData, "input dimension " + std::to_string(csv.p) +
                           " does not match model dimension " + std::to_string(model_dim));

    std::ostream* out = &std::cout;
    std::ofstream file;
    if (!out_path.empty()) {
        file.open(out_path);
        if (!file) die(kExitData, "cannot write '" + out_path + "'");
        out = &file;
    }

    (*out) << "y_pred,decision\n";
    char buf[64];
    for (size_t i = 0; i < csv.n; ++i) {
        double dec = 0.0;
        int label = 0;
        check(qksvm_model_decision(m.get(), csv.features.data() + i * csv.p, csv.p, &dec),
              kExitData);
        check(qksvm_model_predict(m.get(), csv.features.data() + i * csv.p, csv.p, &label),
              kExitData);
        std::snprintf(buf, sizeof(buf), "%d,%.17g\n", label, dec);
        (*out) << buf;
    }
    return 0;
}

/* ------------------------------------------------------------------ */
/* povm                                                                */

struct PovmArgs {
    std::string a1 = "0";
    std::string a2 = "1";
    int prepared = 1;
    uint64_t shots = 0;
    std::optional<uint64_t> seed;
    int dim = 0;
    bool usd = false;
    std::string states;
};

int cmd_povm(const PovmArgs& a) {
    if (a.usd) {
        if (a.states.empty()) die(kExitUsage, "--usd requires --states re,im literals");
        std::vector<std::string> parts;
        std::stringstream ss(a.states);
        std::string tok;
        while (std::getline(ss, tok, ',')) parts.push_back(tok);
        if (parts.size() != 4) die(kExitUsage, "--states needs exactly 4 amplitudes");
        double flat[8];
        for (int i = 0; i < 4; ++i) {
            const auto z = parse_complex(parts[i]);
            flat[2 * i] = z.real();
            flat[2 * i + 1] = z.imag();
        }
        if (a.prepared < 1 || a.prepared > 4)
            die(kExitUsage, "--prepared must be 1..4 for USD");
        double q[5], min_q = 0.0;
        check(qksvm_usd_probs(flat, a.prepared, q, &min_q));
        std::printf("four-state unambiguous discrimination, prepared = state %d\n",
                    a.prepared);
        const char* names[5] = {"usd1", "usd2", "usd3", "usd4", "inconclusive"};
        double sum = 0.0;
        for (int i = 0; i < 5; ++i) {
            std::printf("%-13s %.12f\n", names[i], q[i]);
            sum += q[i];
        }
        std::printf("%-13s %.12f\n", "sum", sum);
        if (min_q < 0.0)
            std::printf("warning: negative outcome value %.3e (operator set not positive "
                        "for these amplitudes)\n",
                        min_q);
        return 0;
    }

    const auto a1 = parse_complex(a.a1);
    const auto a2 = parse_complex(a.a2);
    if (a.prepared != 1 && a.prepared != 2)
        die(kExitUsage, "--prepared must be 1 or 2");
    double analytic[4];
    check(qksvm_povm_probs(a1.real(), a1.imag(), a2.real(), a2.imag(), a.prepared, analytic));
    double fock[4];
    check(qksvm_fock_oracle_probs(a1.real(), a1.imag(), a2.real(), a2.imag(), a.prepared,
                                  a.dim, fock));

    bool sampled = false;
    double freq[4] = {0, 0, 0, 0};
    if (a.shots > 0) {
        if (!a.seed) die(kExitUsage, "--shots requires an explicit --seed");
        uint64_t counts[4];
        check(qksvm_sample_shots(a1.real(), a1.imag(), a2.real(), a2.imag(), a.prepared,
                                 a.shots, *a.seed, counts));
        for (int i = 0; i < 4; ++i)
            freq[i] = static_cast<double>(counts[i]) / static_cast<double>(a.shots);
        sampled = true;
    }

    std::printf("two-state discrimination, prepared = state %d\n", a.prepared);
    if (sampled)
        std::printf("%-8s %-16s %-16s %-16s\n", "outcome", "analytic", "sampled", "fock");
    else
        std::printf("%-8s %-16s %-16s\n", "outcome", "analytic", "fock");
    const char* names[4] = {"pi1", "pi2", "pi3", "pi4"};
    for (int i = 0; i < 4; ++i) {
        if (sampled)
            std::printf("%-8s %-16.12f %-16.12f %-16.12f\n", names[i], analytic[i], freq[i],
                        fock[i]);
        else
            std::printf("%-8s %-16.12f %-16.12f\n", names[i], analytic[i], fock[i]);
    }
    return 0;
}

/* ------------------------------------------------------------------ */
/* check-mercer                                                        */

int cmd_check_mercer(const std::string& data_path, const KernelFlags& kernel, double tol,
                     int threads) {
    DatasetHandle d = dataset_from_csv(data_path);
    KernelHandle k = kernel.build();
    GramHandle g;
    check(qksvm_gram_exact(k.get(), d.get(), threads, g.out()), kExitData);
    double min_eig = 0.0, max_eig = 0.0;
    int psd = 0;
    check(qksvm_gram_mercer_check(g.get(), tol, &min_eig, &max_eig, &psd));
    std::printf("kernel: %s, n = %zu\n", kernel.family.c_str(), qksvm_gram_size(g.get()));
    std::printf("min eigenvalue: %.12e\n", min_eig);
    std::printf("max eigenvalue: %.12e\n", max_eig);
    std::printf("psd: %s (tolerance %.1e relative)\n", psd ? "true" : "false", tol);
    return 0;
}

/* ------------------------------------------------------------------ */
/* benchmark                                                           */

struct BenchArgs {
    std::string data_path, test_path;
    std::string generate = "clusters";
    std::size_t n = 40;
    std::size_t p = 2;
    double separation = 3.0;
    double noise = 0.15;
    KernelFlags kernel;
    double c = 10.0;
    double tol = 1e-3;
    int max_passes = 10000;
    int threads = 0;
    std::optional<uint64_t> seed;
    std::string shots_list;
    std::string out_path;
};

double accuracy(const qksvm_model* m, const qksvm_dataset* d) {
    const size_t n = qksvm_dataset_size(d);
    const size_t p = qksvm_dataset_dim(d);
    std::vector<double> x(p);
    size_t hits = 0;
    for (size_t i = 0; i < n; ++i) {
        check(qksvm_dataset_point(d, i, x.data()), kExitData);
        int want = 0, got = 0;
        check(qksvm_dataset_label(d, i, &want), kExitData);
        check(qksvm_model_predict(m, x.data(), p, &got), kExitData);
        if (want == got) ++hits;
    }
    return static_cast<double>(hits) / static_cast<double>(n);
}

int cmd_benchmark(const BenchArgs& a) {
    DatasetHandle train, test;
    if (!a.data_path.empty()) {
        train = dataset_from_csv(a.data_path);
        if (a.test_path.empty())
            die(kExitUsage, "--data also needs --test for the benchmark");
        test = dataset_from_csv(a.test_path);
    } else {
        if (!a.seed) die(kExitUsage, "generated benchmarks require an explicit --seed");
        if (a.generate == "clusters") {
            check(qksvm_dataset_two_clusters(*a.seed, a.n, a.p, a.separation, train.out()));
            check(qksvm_dataset_two_clusters(*a.seed + 1000, a.n, a.p, a.separation,
                                             test.out()));
        } else if (a.generate == "moons") {
            check(qksvm_dataset_two_moons(*a.seed, a.n, a.noise, train.out()));
            check(qksvm_dataset_two_moons(*a.seed + 1000, a.n, a.noise, test.out()));
        } else {
            die(kExitUsage, "unknown --generate mode '" + a.generate + "'");
        }
    }

    std::vector<uint64_t> shot_counts;
    if (!a.shots_list.empty()) {
        if (a.kernel.family != "gauss")
            die(kExitUsage, "shot sweeps estimate the gaussian kernel; use --kernel gauss");
        std::stringstream ss(a.shots_list);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            try {
                shot_counts.push_back(std::stoull(trimmed(tok)));
            } catch (const std::exception&) {
                die(kExitUsage, "bad --shots-list entry '" + tok + "'");
            }
        }
    }

    struct Row {
        std::string config;
        double train_acc, test_acc, wall_ms, min_eig_pre, min_eig_post;
    };
    std::vector<Row> rows;

    auto run_config = [&](const std::string& name, bool shot_estimated, uint64_t shots) {
        const auto t0 = std::chrono::steady_clock::now();
        KernelHandle k = a.kernel.build();
        GramHandle g;
        double min_pre = 0.0, min_post = 0.0, max_eig = 0.0;
        if (shot_estimated) {
            GramHandle raw;
            check(qksvm_gram_povm(train.get(), a.kernel.sigma, shots, *a.seed, a.threads,
                                  raw.out()));
            check(qksvm_gram_mercer_check(raw.get(), 1e-8, &min_pre, &max_eig, nullptr));
            check(qksvm_gram_psd_repair(raw.get(), g.out()));
            check(qksvm_gram_mercer_check(g.get(), 1e-8, &min_post, &max_eig, nullptr));
        } else {
            check(qksvm_gram_exact(k.get(), train.get(), a.threads, g.out()), kExitData);
            check(qksvm_gram_mercer_check(g.get(), 1e-8, &min_pre, &max_eig, nullptr));
            min_post = min_pre;
        }
        ModelHandle m;
        check(qksvm_train_smo(g.get(), train.get(), a.c, a.tol, a.max_passes,
                              a.seed.value_or(0), m.out()));
        const double train_acc = accuracy(m.get(), train.get());
        const double test_acc = accuracy(m.get(), test.get());
        const double ms = std::chrono::duration<double, std::milli>(
                              std::chrono::steady_clock::now() - t0)
                              .count();
        rows.push_back({name, train_acc, test_acc, ms, min_pre, min_post});
    };

    run_config(a.kernel.family + "/exact", false, 0);
    for (uint64_t shots : shot_counts)
        run_config(a.kernel.family + "/M=" + std::to_string(shots), true, shots);

    std::printf("%-18s %-10s %-10s %-10s %-13s %-13s\n", "config", "train_acc", "test_acc",
                "wall_ms", "min_eig_pre", "min_eig_post");
    for (const auto& r : rows)
        std::printf("%-18s %-10.4f %-10.4f %-10.1f %-13.3e %-13.3e\n", r.config.c_str(),
                    r.train_acc, r.test_acc, r.wall_ms, r.min_eig_pre, r.min_eig_post);

    if (!a.out_path.empty()) {
        std::ofstream out(a.out_path);
        if (!out) die(kExitData, "cannot write '" + a.out_path + "'");
        out << "config,train_acc,test_acc,wall_ms,min_eig_pre,min_eig_post\n";
        char buf[256];
        for (const auto& r : rows) {
            std::snprintf(buf, sizeof(buf), "%s,%.6f,%.6f,%.3f,%.9e,%.9e\n",
                          r.config.c_str(), r.train_acc, r.test_acc, r.wall_ms,
                          r.min_eig_pre, r.min_eig_post);
            out << buf;
        }
        std::printf("report written to %s\n", a.out_path.c_str());
    }
    return 0;
}

} // namespace

/* ------------------------------------------------------------------ */

int main(int argc, char** argv) {
    CLI::App app{"qksvm: kernel SVM toolkit with simulated coherent-state kernel "
                 "measurement"};
    app.require_subcommand(1);

    TrainArgs train_args;
    auto* train = app.add_subcommand("train", "train an SVM and write a model file");
    train->add_option("--data", train_args.data_path, "training CSV (label column 'y')")
        ->required();
    train->add_option("--out", train_args.out_path, "output model file")->required();
    train_args.kernel.attach(train);
    train_args.kernel_opt = train->get_option("--kernel");
    train->add_option("--C", train_args.c, "soft-margin penalty");
    train->add_option("--solver", train_args.solver, "solver")
        ->check(CLI::IsMember({"smo", "lssvm"}));
    train->add_option("--reg", train_args.reg, "least-squares regularization");
    train->add_option("--gram", train_args.gram, "gram construction")
        ->check(CLI::IsMember({"exact", "povm", "ptrace"}));
    train->add_option("--shots", train_args.shots, "measurement shots per pair and mode");
    train->add_option("--seed", train_args.seed, "random seed (required for povm)");
    train->add_option("--threads", train_args.threads, "worker threads (0 = all)");
    train->add_option("--tol", train_args.tol, "KKT tolerance");
    train->add_option("--max-passes", train_args.max_passes, "solver pass limit");

    std::string predict_model, predict_data, predict_out;
    auto* predict = app.add_subcommand("predict", "predict labels with a saved model");
    predict->add_option("--model", predict_model, "model file")->required();
    predict->add_option("--data", predict_data, "feature CSV")->required();
    predict->add_option("--out", predict_out, "output CSV (default stdout)");

    PovmArgs povm_args;
    auto* povm = app.add_subcommand("povm", "coherent-state discrimination probabilities");
    povm->add_option("--a1", povm_args.a1, "first amplitude (complex literal)");
    povm->add_option("--a2", povm_args.a2, "second amplitude");
    povm->add_option("--prepared", povm_args.prepared, "prepared state index");
    povm->add_option("--shots", povm_args.shots, "sample count for the empirical column");
    povm->add_option("--seed", povm_args.seed, "random seed (required with --shots)");
    povm->add_option("--dim", povm_args.dim, "Fock truncation override (0 = rule)");
    povm->add_flag("--usd", povm_args.usd, "four-state unambiguous discrimination");
    povm->add_option("--states", povm_args.states, "four comma-separated amplitudes");

    BenchArgs bench_args;
    auto* bench = app.add_subcommand("benchmark", "exact vs shot-estimated training sweep");
    bench->add_option("--data", bench_args.data_path, "training CSV (else generated)");
    bench->add_option("--test", bench_args.test_path, "test CSV");
    bench->add_option("--generate", bench_args.generate, "generator when no --data")
        ->check(CLI::IsMember({"clusters", "moons"}));
    bench->add_option("--n", bench_args.n, "generated sample count");
    bench->add_option("--p", bench_args.p, "generated dimension (clusters)");
    bench->add_option("--separation", bench_args.separation, "cluster separation in sigmas");
    bench->add_option("--noise", bench_args.noise, "moons jitter");
    bench_args.kernel.attach(bench);
    bench->add_option("--C", bench_args.c, "soft-margin penalty");
    bench->add_option("--tol", bench_args.tol, "KKT tolerance");
    bench->add_option("--max-passes", bench_args.max_passes, "solver pass limit");
    bench->add_option("--threads", bench_args.threads, "worker threads (0 = all)");
    bench->add_option("--seed", bench_args.seed, "random seed");
    bench->add_option("--shots-list", bench_args.shots_list,
                      "comma-separated shot budgets (empty = exact only)");
    bench->add_option("--out", bench_args.out_path, "CSV report path");

    std::string mercer_data;
    double mercer_tol = 1e-8;
    int mercer_threads = 0;
    KernelFlags mercer_kernel;
    auto* mercer = app.add_subcommand("check-mercer", "eigenvalue check of a kernel gram");
    mercer->add_option("--data", mercer_data, "dataset CSV")->required();
    mercer_kernel.attach(mercer);
    mercer->add_option("--tol", mercer_tol, "PSD tolerance (relative)");
    mercer->add_option("--threads", mercer_threads, "worker threads (0 = all)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (app.got_subcommand(train)) return cmd_train(train_args);
        if (app.got_subcommand(predict))
            return cmd_predict(predict_model, predict_data, predict_out);
        if (app.got_subcommand(povm)) return cmd_povm(povm_args);
        if (app.got_subcommand(bench)) return cmd_benchmark(bench_args);
        if (app.got_subcommand(mercer))
            return cmd_check_mercer(mercer_data, mercer_kernel, mercer_tol, mercer_threads);
    } catch (const CliError& e) {
        std::cerr << "error: " << e.message << "\n";
        return e.code;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumeric;
    }
    return kExitUsage;
}
