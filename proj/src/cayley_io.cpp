#include "autoloop/cayley_io.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

namespace autoloop {

std::string cayley_to_string(const CayleyFile& f) {
    std::ostringstream os;
    os << "{\n";
    os << "  \"format\": \"cayley-v1\",\n";
    os << "  \"p\": " << f.p << ",\n";
    os << "  \"construction\": " << nlohmann::json(f.construction).dump() << ",\n";
    os << "  \"parameters\": " << f.parameters.dump() << ",\n";
    os << "  \"order\": " << f.loop.order() << ",\n";
    os << "  \"identity\": " << f.loop.identity() << ",\n";
    os << "  \"elements\": [";
    for (int i = 0; i < f.loop.order(); ++i) {
        if (i) os << ", ";
        os << nlohmann::json(f.loop.label(i)).dump();
    }
    os << "],\n";
    os << "  \"table\": [\n";
    for (int i = 0; i < f.loop.order(); ++i) {
        os << "    [";
        for (int j = 0; j < f.loop.order(); ++j) {
            if (j) os << ",";
            os << f.loop.mul(i, j);
        }
        os << (i + 1 < f.loop.order() ? "],\n" : "]\n");
    }
    os << "  ]\n";
    os << "}\n";
    return os.str();
}

CayleyFile cayley_from_string(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const std::exception& e) {
        throw loop_error(errc::validation_failed, std::string("JSON parse error: ") + e.what());
    }
    if (!j.contains("format") || !j["format"].is_string())
        throw loop_error(errc::format_version_unsupported, "missing format field");
    if (j["format"].get<std::string>() != "cayley-v1")
        throw loop_error(errc::format_version_unsupported, "unsupported format " + j["format"].get<std::string>());

    CayleyFile f;
    try {
        f.p = j.at("p").get<std::int64_t>();
        f.construction = j.at("construction").get<std::string>();
        f.parameters = j.value("parameters", nlohmann::json::object());
        std::vector<std::string> labels = j.at("elements").get<std::vector<std::string>>();
        std::vector<std::vector<int>> table = j.at("table").get<std::vector<std::vector<int>>>();
        f.loop = FiniteLoop::from_table(std::move(labels), std::move(table));
        if (j.contains("identity") && j["identity"].get<int>() != f.loop.identity())
            throw loop_error(errc::validation_failed, "stored identity index disagrees with the table");
    } catch (const loop_error& e) {
        if (e.code() == errc::not_latin || e.code() == errc::no_identity)
            throw loop_error(errc::validation_failed, e.what());
        throw;
    } catch (const std::exception& e) {
        throw loop_error(errc::validation_failed, std::string("malformed cayley file: ") + e.what());
    }
    return f;
}

std::string classification_csv(const ClassificationTable& t) {
    std::ostringstream os;
    os << "p,rep_a,order,exponent,center_size,asc_size,aut_order,oracle_confirmed\n";
    for (const auto& r : t.rows)
        os << t.p << "," << r.rep_a << "," << r.order << "," << r.exponent << "," << r.center_size << ","
           << r.asc_size << "," << r.aut_order << "," << (r.oracle_confirmed ? "true" : "false") << "\n";
    return os.str();
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw loop_error(errc::validation_failed, "cannot open " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_file_atomic(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw loop_error(errc::validation_failed, "cannot write " + tmp);
        out << content;
    }
    std::filesystem::rename(tmp, path);
}

} // namespace autoloop
