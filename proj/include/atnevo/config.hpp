#ifndef ATNEVO_CONFIG_HPP
#define ATNEVO_CONFIG_HPP

/*
 * Plain-text persistence. Config files are key=value lines ('#' comments);
 * unknown keys are errors so typos cannot silently fall back to defaults.
 * Run records are three labelled sections: the config block, per-generation
 * CSV rows, and the champion (fitness, eval count, genome as codon list,
 * optional graph export path).
 */

#include <fstream>
#include <iomanip>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "evolution.hpp"

namespace atnevo {

inline std::string_view mutation_kind_name(MutationKind k) {
    return k == MutationKind::BitFlip ? "bitflip" : "uniform";
}
inline std::string_view encoding_name(Genome::Encoding e) {
    return e == Genome::Encoding::Bitstring ? "bitstring" : "integer";
}
inline std::string_view edge_choice_name(EdgeChoice e) {
    return e == EdgeChoice::FirstEligible ? "first" : "random";
}
inline std::string_view default_action_name(DefaultAction d) {
    return d == DefaultAction::Random ? "random" : "finish";
}

namespace detail {

inline std::string trimmed(const std::string& s) {
    const std::size_t first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return {};
    const std::size_t last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

inline bool parse_bool(const std::string& key, const std::string& value) {
    if (value == "true" || value == "1" || value == "yes") return true;
    if (value == "false" || value == "0" || value == "no") return false;
    throw std::invalid_argument("config key '" + key + "': expected boolean, got '" + value + "'");
}

inline double parse_double(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        const double d = std::stod(value, &used);
        if (used != value.size()) throw std::invalid_argument("");
        return d;
    } catch (const std::exception&) {
        throw std::invalid_argument("config key '" + key + "': expected number, got '" + value + "'");
    }
}

inline long long parse_int(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        const long long v = std::stoll(value, &used);
        if (used != value.size()) throw std::invalid_argument("");
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument("config key '" + key + "': expected integer, got '" + value + "'");
    }
}

inline std::uint64_t parse_u64(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        const std::uint64_t v = std::stoull(value, &used);
        if (used != value.size()) throw std::invalid_argument("");
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument("config key '" + key + "': expected integer, got '" + value + "'");
    }
}

inline std::string format_double(double v) {
    std::ostringstream out;
    out << std::setprecision(std::numeric_limits<double>::max_digits10) << v;
    return out.str();
}

}  // namespace detail

// key=value lines until EOF or a '[section]' header (which is not consumed
// beyond the line itself; the caller sees it via the return parameter).
inline std::map<std::string, std::string> parse_key_values(std::istream& in,
                                                           std::string* section_header = nullptr) {
    std::map<std::string, std::string> kv;
    std::string line;
    while (std::getline(in, line)) {
        std::string t = detail::trimmed(line);
        if (const std::size_t hash = t.find('#'); hash != std::string::npos)
            t = detail::trimmed(t.substr(0, hash));
        if (t.empty()) continue;
        if (t.front() == '[') {
            if (section_header) *section_header = t;
            return kv;
        }
        const std::size_t eq = t.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config: line without '=': " + line);
        const std::string key = detail::trimmed(t.substr(0, eq));
        const std::string value = detail::trimmed(t.substr(eq + 1));
        if (key.empty()) throw std::invalid_argument("config: empty key in line: " + line);
        if (!kv.emplace(key, value).second)
            throw std::invalid_argument("config: duplicate key '" + key + "'");
    }
    if (section_header) section_header->clear();
    return kv;
}

inline EvolutionConfig evolution_config_from_map(std::map<std::string, std::string> kv) {
    EvolutionConfig cfg;
    const auto take = [&kv](const char* key) {
        auto it = kv.find(key);
        if (it == kv.end()) return std::string();
        std::string v = it->second;
        kv.erase(it);
        return v;
    };

    if (const auto v = take("population_size"); !v.empty())
        cfg.population_size = static_cast<int>(detail::parse_int("population_size", v));
    if (const auto v = take("truncation_size"); !v.empty())
        cfg.truncation_size = static_cast<int>(detail::parse_int("truncation_size", v));
    if (const auto v = take("decay"); !v.empty()) cfg.decay = detail::parse_double("decay", v);

    bool encoding_given = false;
    if (const auto v = take("mutation"); !v.empty()) {
        if (v == "bitflip") cfg.mutation.kind = MutationKind::BitFlip;
        else if (v == "uniform") cfg.mutation.kind = MutationKind::UniformToken;
        else throw std::invalid_argument("config key 'mutation': expected bitflip|uniform");
    }
    if (const auto v = take("mutation_rate"); !v.empty())
        cfg.mutation.rate = detail::parse_double("mutation_rate", v);
    if (const auto v = take("add_delete_rate"); !v.empty())
        cfg.mutation.add_delete_rate = detail::parse_double("add_delete_rate", v);
    if (const auto v = take("encoding"); !v.empty()) {
        encoding_given = true;
        if (v == "bitstring") cfg.encoding = Genome::Encoding::Bitstring;
        else if (v == "integer") cfg.encoding = Genome::Encoding::Integer;
        else throw std::invalid_argument("config key 'encoding': expected bitstring|integer");
    }
    if (!encoding_given) cfg.encoding = encoding_for(cfg.mutation.kind);

    if (const auto v = take("genome_length"); !v.empty())
        cfg.genome_length = static_cast<int>(detail::parse_int("genome_length", v));
    if (const auto v = take("generations"); !v.empty())
        cfg.generations = static_cast<int>(detail::parse_int("generations", v));
    if (const auto v = take("seed"); !v.empty()) cfg.seed = detail::parse_u64("seed", v);

    if (const auto v = take("no_contradiction"); !v.empty())
        cfg.build.no_contradiction = detail::parse_bool("no_contradiction", v);
    if (const auto v = take("typed_stack_ops"); !v.empty())
        cfg.build.typed_stack_ops = detail::parse_bool("typed_stack_ops", v);

    if (const auto v = take("edge_choice"); !v.empty()) {
        if (v == "first") cfg.policy.edge_choice = EdgeChoice::FirstEligible;
        else if (v == "random") cfg.policy.edge_choice = EdgeChoice::RandomEligible;
        else throw std::invalid_argument("config key 'edge_choice': expected first|random");
    }
    if (const auto v = take("default_action"); !v.empty()) {
        if (v == "random") cfg.policy.default_action = DefaultAction::Random;
        else if (v == "finish") cfg.policy.default_action = DefaultAction::Finish;
        else throw std::invalid_argument("config key 'default_action': expected random|finish");
    }
    if (const auto v = take("step_cap"); !v.empty())
        cfg.policy.step_cap = static_cast<int>(detail::parse_int("step_cap", v));

    if (!kv.empty()) throw std::invalid_argument("config: unknown key '" + kv.begin()->first + "'");
    return cfg;
}

inline void write_evolution_config(const EvolutionConfig& cfg, std::ostream& out) {
    out << "population_size=" << cfg.population_size << '\n';
    out << "truncation_size=" << cfg.truncation_size << '\n';
    out << "decay=" << detail::format_double(cfg.decay) << '\n';
    out << "mutation=" << mutation_kind_name(cfg.mutation.kind) << '\n';
    out << "mutation_rate=" << detail::format_double(cfg.mutation.rate) << '\n';
    out << "add_delete_rate=" << detail::format_double(cfg.mutation.add_delete_rate) << '\n';
    out << "encoding=" << encoding_name(cfg.encoding) << '\n';
    out << "genome_length=" << cfg.genome_length << '\n';
    out << "generations=" << cfg.generations << '\n';
    out << "seed=" << cfg.seed << '\n';
    out << "no_contradiction=" << (cfg.build.no_contradiction ? "true" : "false") << '\n';
    out << "typed_stack_ops=" << (cfg.build.typed_stack_ops ? "true" : "false") << '\n';
    out << "edge_choice=" << edge_choice_name(cfg.policy.edge_choice) << '\n';
    out << "default_action=" << default_action_name(cfg.policy.default_action) << '\n';
    out << "step_cap=" << cfg.policy.step_cap << '\n';
}

inline EvolutionConfig load_evolution_config(std::istream& in) {
    return evolution_config_from_map(parse_key_values(in));
}

inline EvolutionConfig load_evolution_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file: " + path);
    return load_evolution_config(in);
}

inline void write_run_record(const RunRecord& record, std::ostream& out) {
    out << "[config]\n";
    write_evolution_config(record.config, out);
    out << "maze=" << record.maze_name << '\n';
    out << "[generations]\n";
    out << "generation,best,mean,median\n";
    for (const GenerationStats& g : record.history)
        out << g.generation << ',' << detail::format_double(g.best) << ','
            << detail::format_double(g.mean) << ',' << detail::format_double(g.median) << '\n';
    out << "[champion]\n";
    out << "fitness=" << detail::format_double(record.champion_fitness) << '\n';
    out << "evals=" << record.champion_evals << '\n';
    out << "genome=";
    const std::vector<std::uint32_t> codons = record.champion.codons();
    for (std::size_t i = 0; i < codons.size(); ++i) out << (i ? " " : "") << codons[i];
    out << '\n';
    if (!record.graph_path.empty()) out << "graph=" << record.graph_path << '\n';
}

inline RunRecord read_run_record(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || detail::trimmed(line) != "[config]")
        throw std::invalid_argument("run record: expected [config] section");

    std::string header;
    std::map<std::string, std::string> kv = parse_key_values(in, &header);
    RunRecord record;
    if (const auto it = kv.find("maze"); it != kv.end()) {
        record.maze_name = it->second;
        kv.erase(it);
    }
    record.config = evolution_config_from_map(std::move(kv));

    if (header != "[generations]")
        throw std::invalid_argument("run record: expected [generations] section");
    if (!std::getline(in, line) || detail::trimmed(line) != "generation,best,mean,median")
        throw std::invalid_argument("run record: expected generations CSV header");
    bool have_champion = false;
    while (std::getline(in, line)) {
        const std::string t = detail::trimmed(line);
        if (t.empty()) continue;
        if (t == "[champion]") {
            have_champion = true;
            break;
        }
        GenerationStats g;
        std::istringstream row(t);
        std::string field;
        if (!std::getline(row, field, ',')) throw std::invalid_argument("run record: bad CSV row");
        g.generation = static_cast<int>(detail::parse_int("generation", field));
        if (!std::getline(row, field, ',')) throw std::invalid_argument("run record: bad CSV row");
        g.best = detail::parse_double("best", field);
        if (!std::getline(row, field, ',')) throw std::invalid_argument("run record: bad CSV row");
        g.mean = detail::parse_double("mean", field);
        if (!std::getline(row, field, ',')) throw std::invalid_argument("run record: bad CSV row");
        g.median = detail::parse_double("median", field);
        record.history.push_back(g);
    }

    if (!have_champion) throw std::invalid_argument("run record: expected [champion] section");

    std::map<std::string, std::string> champ = parse_key_values(in);
    const auto take = [&champ](const char* key) {
        const auto it = champ.find(key);
        if (it == champ.end())
            throw std::invalid_argument(std::string("run record: champion missing '") + key + "'");
        std::string value = std::move(it->second);
        champ.erase(it);
        return value;
    };
    record.champion_fitness = detail::parse_double("fitness", take("fitness"));
    record.champion_evals = static_cast<int>(detail::parse_int("evals", take("evals")));
    std::istringstream codons(take("genome"));
    std::vector<std::uint32_t> values;
    std::uint32_t v = 0;
    while (codons >> v) values.push_back(v);
    if (!codons.eof()) throw std::invalid_argument("run record: malformed champion genome");
    record.champion = genome_from_codons(values, record.config.encoding);
    if (const auto it = champ.find("graph"); it != champ.end()) {
        record.graph_path = it->second;
        champ.erase(it);
    }
    if (!champ.empty())
        throw std::invalid_argument("run record: unknown champion key '" + champ.begin()->first +
                                    "'");
    return record;
}

inline void save_run_record(const RunRecord& record, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot write run record: " + path);
    write_run_record(record, out);
}

inline RunRecord load_run_record(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open run record: " + path);
    return read_run_record(in);
}

}  // namespace atnevo

#endif
