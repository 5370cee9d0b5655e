#pragma once

// Persistent JSON store of computed quantities keyed by
// quantity|n|k|mode|seed, invalidated wholesale when the code version changes.

#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <string>

#include <nlohmann/json.hpp>

namespace hyperarr {

inline constexpr const char* kCodeVersion = "hyperarr-1.0";
inline constexpr int kSchemaVersion = 1;

struct StatsKey {
    std::string quantity;
    std::size_t n = 0;
    std::size_t k = 0;
    std::string mode;
    std::uint64_t seed = 0;

    std::string str() const {
        return quantity + "|" + std::to_string(n) + "|" + std::to_string(k) + "|" + mode + "|" + std::to_string(seed);
    }
};

class StatsStore {
public:
    StatsStore() = default;

    /// Loads path if it exists and carries the current code version.
    explicit StatsStore(std::filesystem::path path) : path_(std::move(path)) {
        if (!std::filesystem::exists(path_)) return;
        std::ifstream in(path_);
        try {
            auto j = nlohmann::json::parse(in);
            if (j.value("code_version", "") == kCodeVersion && j.value("schema", 0) == kSchemaVersion)
                entries_ = j.at("entries");
        } catch (const std::exception&) {
            entries_ = nlohmann::json::object();
        }
    }

    std::optional<nlohmann::json> lookup(const StatsKey& key) const {
        if (auto it = entries_.find(key.str()); it != entries_.end()) return std::optional<nlohmann::json>(std::in_place, *it);
        return std::nullopt;
    }

    void record(const StatsKey& key, nlohmann::json value) { entries_[key.str()] = std::move(value); }

    std::size_t size() const { return entries_.size(); }

    void save() const {
        if (path_.empty()) return;
        if (path_.has_parent_path()) std::filesystem::create_directories(path_.parent_path());
        nlohmann::json j;
        j["code_version"] = kCodeVersion;
        j["schema"] = kSchemaVersion;
        j["entries"] = entries_;
        std::ofstream out(path_);
        out << j.dump(2) << '\n';
    }

    /// One row per entry: quantity,n,k,mode,seed,value (value as compact JSON).
    void write_csv(std::ostream& os) const {
        os << "quantity,n,k,mode,seed,value\n";
        for (const auto& [key, value] : entries_.items()) {
            std::string row = key;
            for (auto& c : row)
                if (c == '|') c = ',';
            std::string v = value.is_string() ? value.get<std::string>() : value.dump();
            std::string quoted = "\"";
            for (char c : v) {
                if (c == '"') quoted += '"';
                quoted += c;
            }
            quoted += '"';
            os << row << ',' << quoted << '\n';
        }
    }

private:
    std::filesystem::path path_;
    nlohmann::json entries_ = nlohmann::json::object();
};

}  // namespace hyperarr
