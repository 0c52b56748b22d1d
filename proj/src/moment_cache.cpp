#include "bergman/error.hpp"
#include "bergman/moments.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace bergman {

namespace {

constexpr const char* kFormat = "bergman-moment-cache";
constexpr int kVersion = 1;

std::string hex64(std::uint64_t v) {
    std::ostringstream os;
    os << std::hex << v;
    return os.str();
}

nlohmann::json to_json(const MomentTable& t) {
    nlohmann::json c = nlohmann::json::array();
    nlohmann::json I = nlohmann::json::array();
    for (int d = 0; d <= t.maxdeg(); ++d) {
        for (int n = 0; n <= d; ++n) {
            const int m = d - n;
            c.push_back({t.c(m, n).re.to_hex(), t.c(m, n).im.to_hex()});
            I.push_back(t.I(m, n).to_hex());
        }
    }
    return {{"fingerprint", hex64(t.fingerprint())},
            {"precision_bits", t.precision_bits()},
            {"maxdeg", t.maxdeg()},
            {"c", std::move(c)},
            {"I", std::move(I)}};
}

MomentTable from_json(const nlohmann::json& j) {
    const auto bits = j.at("precision_bits").get<mp::Bits>();
    const int maxdeg = j.at("maxdeg").get<int>();
    const std::uint64_t fp = std::stoull(j.at("fingerprint").get<std::string>(), nullptr, 16);
    std::vector<Complex> c;
    std::vector<Real> I;
    for (const auto& e : j.at("c")) {
        c.emplace_back(Real::from_string(e.at(0).get<std::string>(), bits),
                       Real::from_string(e.at(1).get<std::string>(), bits));
    }
    for (const auto& e : j.at("I")) {
        I.push_back(Real::from_string(e.get<std::string>(), bits));
    }
    return MomentTable(fp, maxdeg, bits, std::move(c), std::move(I));
}

}  // namespace

void save_moment_tables(const std::filesystem::path& path, const std::vector<MomentTable>& tables) {
    nlohmann::json doc{{"format", kFormat}, {"version", kVersion}, {"tables", nlohmann::json::array()}};
    for (const auto& t : tables) {
        doc["tables"].push_back(to_json(t));
    }
    std::ofstream out(path);
    if (!out) {
        throw Error(ErrorKind::InvalidInput, "cannot write moment cache " + path.string());
    }
    out << doc.dump(1) << '\n';
}

std::vector<MomentTable> load_moment_tables(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorKind::InvalidInput, "cannot open moment cache " + path.string());
    }
    try {
        const auto doc = nlohmann::json::parse(in);
        if (doc.at("format") != kFormat || doc.at("version") != kVersion) {
            throw Error(ErrorKind::InvalidInput, "unsupported moment cache format in " + path.string());
        }
        std::vector<MomentTable> out;
        for (const auto& t : doc.at("tables")) {
            out.push_back(from_json(t));
        }
        return out;
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::InvalidInput, "malformed moment cache " + path.string() + ": " + e.what());
    } catch (const std::invalid_argument& e) {
        throw Error(ErrorKind::InvalidInput, "malformed moment cache " + path.string() + ": " + e.what());
    }
}

MomentCache::MomentCache(std::filesystem::path path) : path_(std::move(path)) {
    if (std::filesystem::exists(*path_)) {
        for (auto& t : load_moment_tables(*path_)) {
            const auto key = std::make_pair(t.fingerprint(), t.precision_bits());
            tables_[key] = std::make_shared<const MomentTable>(std::move(t));
        }
    }
}

std::shared_ptr<const MomentTable> MomentCache::get(const Polygon& p, int maxdeg, mp::Bits bits, int jobs) {
    const auto key = std::make_pair(polygon_fingerprint(p, bits), bits);
    {
        std::lock_guard lock(mutex_);
        if (auto it = tables_.find(key); it != tables_.end() && it->second->maxdeg() >= maxdeg) {
            return it->second;
        }
    }
    auto table = std::make_shared<const MomentTable>(moment_table(p, maxdeg, bits, jobs));
    std::lock_guard lock(mutex_);
    auto& slot = tables_[key];
    if (!slot || slot->maxdeg() < table->maxdeg()) {
        slot = table;
    }
    return slot;
}

void MomentCache::flush() const {
    if (!path_) {
        return;
    }
    std::vector<MomentTable> all;
    {
        std::lock_guard lock(mutex_);
        for (const auto& [key, t] : tables_) {
            all.push_back(*t);
        }
    }
    save_moment_tables(*path_, all);
}

std::size_t MomentCache::size() const {
    std::lock_guard lock(mutex_);
    return tables_.size();
}

}  // namespace bergman
