#include "tsrsr/bench/config.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include <fmt/format.h>

#include "tsrsr/error.hpp"
#include "tsrsr/rng.hpp"
#include "tsrsr/testbed/objectives.hpp"

namespace tsrsr::bench {

using acquisition::AcquisitionConfig;

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v) {
    try {
        std::size_t used = 0;
        const double out = std::stod(v, &used);
        if (used == v.size()) return out;
    } catch (const std::exception&) {
    }
    throw InvalidArgument("config key '" + key + "': expected a number, got '" + v + "'");
}

long long to_int(const std::string& key, const std::string& v) {
    try {
        std::size_t used = 0;
        const long long out = std::stoll(v, &used);
        if (used == v.size()) return out;
    } catch (const std::exception&) {
    }
    throw InvalidArgument("config key '" + key + "': expected an integer, got '" + v + "'");
}

std::uint64_t to_uint(const std::string& key, const std::string& v) {
    try {
        std::size_t used = 0;
        const unsigned long long out = std::stoull(v, &used);
        if (used == v.size() && v.find('-') == std::string::npos) return out;
    } catch (const std::exception&) {
    }
    throw InvalidArgument("config key '" + key + "': expected a non-negative integer, got '" + v + "'");
}

bool to_bool(const std::string& key, const std::string& v) {
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw InvalidArgument("config key '" + key + "': expected a boolean, got '" + v + "'");
}

std::vector<std::string> split_list(const std::string& v) {
    std::vector<std::string> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

void apply_acq_param(AcquisitionConfig& cfg, const std::string& key, const std::string& param,
                     const std::string& value) {
    if (param == "resample_cap")
        cfg.resample_cap = static_cast<int>(to_int(key, value));
    else if (param == "delta")
        cfg.delta = to_double(key, value);
    else if (param == "temperature")
        cfg.temperature = to_double(key, value);
    else if (param == "share_factorization")
        cfg.share_factorization = to_bool(key, value);
    else if (param == "liar") {
        if (value != "kriging-believer") throw InvalidArgument("only the kriging-believer liar is supported");
    } else
        throw InvalidArgument("unknown acquisition parameter '" + key + "'");
}

std::string num(double v) { return fmt::format("{}", v); }

}  // namespace

std::map<std::string, std::string> parse_key_values(std::istream& in, char comment) {
    std::map<std::string, std::string> out;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string t = trim(line);
        if (t.empty() || t[0] == comment) continue;
        const auto eq = t.find('=');
        if (eq == std::string::npos)
            throw InvalidArgument("line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(t.substr(0, eq));
        if (key.empty()) throw InvalidArgument("line " + std::to_string(lineno) + ": empty key");
        out[key] = trim(t.substr(eq + 1));
    }
    return out;
}

ExperimentConfig parse_config(std::istream& in) {
    const auto kv = parse_key_values(in);
    ExperimentConfig cfg;
    AcquisitionConfig global;
    std::map<std::string, std::vector<std::pair<std::string, std::string>>> overrides;
    std::vector<std::string> algos;

    for (const auto& [key, value] : kv) {
        if (key.rfind("manifest.", 0) == 0) continue;
        if (key == "objective.name") cfg.objective = value;
        else if (key == "gp.kernel") cfg.kernel_family = gp::parse_kernel_family(value);
        else if (key == "gp.nu") cfg.nu = to_double(key, value);
        else if (key == "gp.lengthscale") cfg.lengthscale = to_double(key, value);
        else if (key == "gp.signal_variance") cfg.signal_variance = to_double(key, value);
        else if (key == "gp.noise") cfg.noise = to_double(key, value);
        else if (key == "candidates.scheme") cfg.scheme = gp::parse_scheme(value);
        else if (key == "candidates.count") cfg.candidate_count = to_int(key, value);
        else if (key == "run.m") cfg.m = static_cast<int>(to_int(key, value));
        else if (key == "run.T") cfg.T = static_cast<int>(to_int(key, value));
        else if (key == "run.n_init") cfg.n_init = static_cast<int>(to_int(key, value));
        else if (key == "run.T_init") cfg.T_init = static_cast<int>(to_int(key, value));
        else if (key == "run.trials") cfg.trials = static_cast<int>(to_int(key, value));
        else if (key == "run.trials_per_function") cfg.trials_per_function = static_cast<int>(to_int(key, value));
        else if (key == "run.seed") cfg.seed = to_uint(key, value);
        else if (key == "run.workers") cfg.workers = static_cast<int>(to_int(key, value));
        else if (key == "regret.reference") {
            if (value == "known") cfg.regret_reference = RegretReference::Known;
            else if (value == "candidates") cfg.regret_reference = RegretReference::Candidates;
            else throw InvalidArgument("regret.reference must be 'known' or 'candidates'");
        }
        else if (key == "algos") algos = split_list(value);
        else if (key == "theory.delta") cfg.theory_delta = to_double(key, value);
        else if (key == "theory.rho_subsets") cfg.rho_subsets = static_cast<int>(to_int(key, value));
        else if (key == "out.dir") cfg.out_dir = value;
        else if (key.rfind("acq.", 0) == 0) {
            const std::string rest = key.substr(4);
            const auto dot = rest.find('.');
            if (dot == std::string::npos) apply_acq_param(global, key, rest, value);
            else overrides[rest.substr(0, dot)].emplace_back(rest.substr(dot + 1), value);
        } else {
            throw InvalidArgument("unknown config key '" + key + "'");
        }
    }

    for (const auto& [id, params] : overrides)
        if (std::find(algos.begin(), algos.end(), id) == algos.end())
            throw InvalidArgument("acquisition override for '" + id + "' which is not in algos");
    std::set<std::string> seen;
    for (const auto& id : algos) {
        if (!seen.insert(id).second) throw InvalidArgument("algorithm '" + id + "' listed twice");
        AlgorithmEntry entry{id, global};
        entry.acquisition.strategy = acquisition::parse_strategy(id);
        if (auto it = overrides.find(id); it != overrides.end())
            for (const auto& [param, value] : it->second)
                apply_acq_param(entry.acquisition, "acq." + id + "." + param, param, value);
        cfg.algorithms.push_back(entry);
    }
    cfg.validate();
    return cfg;
}

ExperimentConfig parse_config_text(const std::string& text) {
    std::istringstream in(text);
    return parse_config(in);
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError(path, "cannot open config");
    return parse_config(in);
}

Eigen::Index ExperimentConfig::dimension() const {
    if (objective == "gp-prior-2d") return 2;
    if (objective == "gp-prior-3d") return 3;
    return testbed::objective_by_id(objective).dimension();
}

Eigen::Index ExperimentConfig::resolved_candidate_count() const {
    return candidate_count > 0 ? candidate_count : 1000 * dimension();
}

gp::KernelSpec ExperimentConfig::model_kernel() const {
    return gp::KernelSpec(kernel_family, Eigen::VectorXd::Constant(dimension(), lengthscale), signal_variance, nu);
}

const AlgorithmEntry& ExperimentConfig::algorithm(const std::string& id) const {
    for (const auto& a : algorithms)
        if (a.id == id) return a;
    throw InvalidArgument("algorithm '" + id + "' is not part of this experiment");
}

void ExperimentConfig::validate() const {
    if (!testbed::is_gp_prior_id(objective)) (void)testbed::objective_by_id(objective);
    if (m < 1) throw InvalidArgument("run.m must be at least 1");
    if (T < 1) throw InvalidArgument("run.T must be at least 1");
    if (trials < 1) throw InvalidArgument("run.trials must be at least 1");
    if (n_init < 0 || T_init < 0) throw InvalidArgument("run.n_init and run.T_init must be non-negative");
    if (trials_per_function < 1) throw InvalidArgument("run.trials_per_function must be at least 1");
    if (workers < 1) throw InvalidArgument("run.workers must be at least 1");
    if (candidate_count != 0 && candidate_count < 2) throw InvalidArgument("candidates.count must be 0 or >= 2");
    if (n_init > resolved_candidate_count()) throw InvalidArgument("run.n_init exceeds the candidate count");
    if (!(noise > 0.0)) throw InvalidArgument("gp.noise must be positive");
    if (!(theory_delta > 0.0 && theory_delta < 1.0)) throw InvalidArgument("theory.delta must lie in (0, 1)");
    if (rho_subsets < 0) throw InvalidArgument("theory.rho_subsets must be non-negative");
    if (algorithms.empty()) throw InvalidArgument("algos must list at least one strategy");
    for (const auto& a : algorithms) a.acquisition.validate();
    (void)model_kernel();
}

std::string ExperimentConfig::canonical() const {
    std::ostringstream os;
    os << "objective.name=" << objective << '\n'
       << "gp.kernel=" << (kernel_family == gp::KernelFamily::Matern ? "matern" : "rbf") << '\n'
       << "gp.nu=" << num(nu) << '\n'
       << "gp.lengthscale=" << num(lengthscale) << '\n'
       << "gp.signal_variance=" << num(signal_variance) << '\n'
       << "gp.noise=" << num(noise) << '\n'
       << "candidates.scheme=" << gp::scheme_name(scheme) << '\n'
       << "candidates.count=" << candidate_count << '\n'
       << "run.m=" << m << '\n'
       << "run.T=" << T << '\n'
       << "run.n_init=" << n_init << '\n'
       << "run.T_init=" << T_init << '\n'
       << "run.trials=" << trials << '\n'
       << "run.trials_per_function=" << trials_per_function << '\n'
       << "run.seed=" << seed << '\n'
       << "regret.reference=" << (regret_reference == RegretReference::Known ? "known" : "candidates") << '\n'
       << "theory.delta=" << num(theory_delta) << '\n'
       << "theory.rho_subsets=" << rho_subsets << '\n'
       << "algos=";
    for (std::size_t i = 0; i < algorithms.size(); ++i) os << (i ? "," : "") << algorithms[i].id;
    os << '\n';
    for (const auto& a : algorithms) {
        const auto& c = a.acquisition;
        os << "acq." << a.id << ".resample_cap=" << c.resample_cap << '\n'
           << "acq." << a.id << ".delta=" << num(c.delta) << '\n'
           << "acq." << a.id << ".temperature=" << num(c.temperature) << '\n'
           << "acq." << a.id << ".share_factorization=" << (c.share_factorization ? "true" : "false") << '\n';
    }
    return os.str();
}

std::string ExperimentConfig::serialize() const {
    return canonical() + "run.workers=" + std::to_string(workers) + "\nout.dir=" + out_dir + "\n";
}

std::uint64_t ExperimentConfig::hash() const { return fnv1a64(canonical()); }

std::string ExperimentConfig::hash_hex() const { return fmt::format("{:016x}", hash()); }

}  // namespace tsrsr::bench
