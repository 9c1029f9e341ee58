#include "tsrsr/bench/results.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "tsrsr/error.hpp"

namespace tsrsr::bench {

namespace fs = std::filesystem;

namespace {

constexpr const char* kFormatTag = "tsrsr-trial-1";

std::string num(double v) { return fmt::format("{}", v); }

double parse_double(const std::string& text, const fs::path& path) {
    const char* begin = text.c_str();
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin || *end != '\0') throw IoError(path.string(), "malformed number '" + text + "'");
    return v;
}

long long parse_int(const std::string& text, const fs::path& path) {
    const char* begin = text.c_str();
    char* end = nullptr;
    const long long v = std::strtoll(begin, &end, 10);
    if (end == begin || *end != '\0') throw IoError(path.string(), "malformed integer '" + text + "'");
    return v;
}

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::string item;
    std::stringstream ss(line);
    while (std::getline(ss, item, sep)) out.push_back(item);
    if (!line.empty() && line.back() == sep) out.emplace_back();
    return out;
}

}  // namespace

std::string trial_file_name(const std::string& algorithm, int trial) {
    return fmt::format("trial_{}_{}.csv", algorithm, trial);
}

std::string format_trial(const TrialResult& r) {
    const auto& trace = r.trace;
    std::string out;
    auto header = [&](const std::string& key, const std::string& value) {
        out += "# " + key + "=" + value + "\n";
    };
    header("format", kFormatTag);
    header("algorithm", r.algorithm);
    header("trial", std::to_string(r.trial));
    header("seed", std::to_string(r.seed));
    header("config_hash", r.config_hash);
    header("objective", r.objective);
    header("dimension", std::to_string(r.dimension));
    header("candidate_count", std::to_string(r.candidate_count));
    header("n_init", std::to_string(r.n_init));
    header("T_init", std::to_string(r.T_init));
    header("iterations", std::to_string(trace.iterations()));
    header("m", std::to_string(trace.batch_size()));
    header("noise", num(r.noise));
    header("fstar", num(trace.fstar()));
    header("evaluations", std::to_string(r.evaluations));
    std::string init;
    for (std::size_t i = 0; i < r.initial_indices.size(); ++i)
        init += (i ? ";" : "") + std::to_string(r.initial_indices[i]);
    header("initial_indices", init);
    header("simple_regret", num(diagnostics::simple_regret(trace)));
    header("cumulative_regret", num(diagnostics::cumulative_regret(trace)));
    if (r.theory) {
        const auto& t = *r.theory;
        header("theory.rho_hat", num(t.rho_hat));
        header("theory.rho_floored", std::to_string(t.rho_floored));
        header("theory.gamma_hat", num(t.gamma_hat));
        header("theory.max_psi", num(t.max_psi));
        header("theory.bound", num(t.bound));
        header("theory.delta", num(t.delta));
        header("theory.violation_fraction", num(t.violation_fraction));
    }

    out += "iter,slot";
    for (Eigen::Index j = 0; j < r.dimension; ++j) out += fmt::format(",x{}", j + 1);
    out += ",y,regret,sigma_used,rsr_ratio,fstar_draw,resamples\n";
    for (const auto& rec : trace.records()) {
        out += fmt::format("{},{}", rec.iteration, rec.slot);
        for (Eigen::Index j = 0; j < rec.point.size(); ++j) out += "," + num(rec.point[j]);
        out += fmt::format(",{},{},{},{},{},{}\n", num(rec.observation), num(rec.regret), num(rec.sigma),
                           num(rec.rsr), num(rec.fstar_draw), rec.resamples);
    }
    return out;
}

void write_text_atomic(const fs::path& path, const std::string& text) {
    const fs::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError(tmp.string(), "cannot open for writing");
        out << text;
        out.flush();
        if (!out) throw IoError(tmp.string(), "write failed");
    }
    std::error_code ec;
    fs::rename(tmp, path, ec);
    if (ec) throw IoError(path.string(), "rename failed: " + ec.message());
}

fs::path write_trial(const TrialResult& result, const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw IoError(dir.string(), "cannot create directory: " + ec.message());
    const fs::path path = dir / trial_file_name(result.algorithm, result.trial);
    write_text_atomic(path, format_trial(result));
    return path;
}

double StoredTrial::header_number(const std::string& key) const {
    const auto it = header.find(key);
    if (it == header.end()) throw IoError(path.string(), "missing header key '" + key + "'");
    return parse_double(it->second, path);
}

StoredTrial read_trial(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError(path.string(), "cannot open result file");
    StoredTrial st;
    st.path = path;
    std::string line;
    while (std::getline(in, line) && line.rfind("# ", 0) == 0) {
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw IoError(path.string(), "malformed header line");
        st.header[line.substr(2, eq - 2)] = line.substr(eq + 1);
    }
    if (st.header["format"] != kFormatTag) throw IoError(path.string(), "not a trial result file");
    auto text = [&](const std::string& key) {
        const auto it = st.header.find(key);
        if (it == st.header.end()) throw IoError(path.string(), "missing header key '" + key + "'");
        return it->second;
    };
    st.algorithm = text("algorithm");
    st.trial = static_cast<int>(parse_int(text("trial"), path));
    st.config_hash = text("config_hash");
    st.candidate_count = parse_int(text("candidate_count"), path);
    st.evaluations = parse_int(text("evaluations"), path);
    st.n_init = static_cast<int>(parse_int(text("n_init"), path));
    st.T_init = static_cast<int>(parse_int(text("T_init"), path));
    const auto dim = parse_int(text("dimension"), path);
    const auto iterations = static_cast<int>(parse_int(text("iterations"), path));
    const auto m = static_cast<int>(parse_int(text("m"), path));
    const double fstar = parse_double(text("fstar"), path);
    st.trace = diagnostics::RegretTrace(fstar, iterations, m);

    const std::size_t columns = static_cast<std::size_t>(dim) + 8;
    if (split(line, ',').size() != columns) throw IoError(path.string(), "unexpected column header");
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto cells = split(line, ',');
        if (cells.size() != columns) throw IoError(path.string(), "row has the wrong number of columns");
        diagnostics::SlotRecord rec;
        rec.iteration = static_cast<int>(parse_int(cells[0], path));
        rec.slot = static_cast<int>(parse_int(cells[1], path));
        rec.point.resize(dim);
        std::size_t c = 2;
        for (Eigen::Index j = 0; j < dim; ++j) rec.point[j] = parse_double(cells[c++], path);
        rec.observation = parse_double(cells[c++], path);
        rec.regret = parse_double(cells[c++], path);
        rec.value = fstar - rec.regret;
        rec.sigma = parse_double(cells[c++], path);
        rec.rsr = parse_double(cells[c++], path);
        rec.fstar_draw = parse_double(cells[c++], path);
        rec.resamples = static_cast<int>(parse_int(cells[c++], path));
        try {
            st.trace.restore(std::move(rec));
        } catch (const InvalidArgument& e) {
            throw IoError(path.string(), e.what());
        }
    }
    return st;
}

std::vector<StoredTrial> load_results(const fs::path& dir) {
    std::error_code ec;
    if (!fs::is_directory(dir, ec)) throw IoError(dir.string(), "not a results directory");
    std::vector<StoredTrial> out;
    for (const auto& entry : fs::directory_iterator(dir)) {
        const std::string name = entry.path().filename().string();
        if (entry.is_regular_file() && name.rfind("trial_", 0) == 0 && entry.path().extension() == ".csv")
            out.push_back(read_trial(entry.path()));
    }
    std::sort(out.begin(), out.end(), [](const StoredTrial& a, const StoredTrial& b) {
        return std::tie(a.algorithm, a.trial) < std::tie(b.algorithm, b.trial);
    });
    return out;
}

}  // namespace tsrsr::bench
