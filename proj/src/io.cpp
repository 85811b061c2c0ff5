#include "f2lab/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace f2lab {

using nlohmann::json;

namespace {

GroupSpec spec_from_json(const json& j) {
    if (!j.contains("p") || !j.contains("n"))
        throw std::invalid_argument("set file: missing p or n");
    std::uint32_t p = j.at("p").get<std::uint32_t>();
    std::uint32_t n = j.at("n").get<std::uint32_t>();
    if (!is_prime_u32(p))
        throw std::invalid_argument("set file: p is not prime");
    return GroupSpec::make(p, n);
}

int hex_val(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
}

}  // namespace

GroupSet parse_set_json(const std::string& text) {
    json j = json::parse(text);
    GroupSpec g = spec_from_json(j);
    std::string enc = j.value("encoding", "");
    GroupSet s(g);
    if (enc == "hexmask") {
        std::string data = j.at("data").get<std::string>();
        std::uint64_t bytes = (g.order + 7) / 8;
        if (data.size() != 2 * bytes)
            throw std::invalid_argument("set file: mask length mismatch");
        for (std::uint64_t b = 0; b < bytes; ++b) {
            int hiv = hex_val(data[2 * b]), lov = hex_val(data[2 * b + 1]);
            if (hiv < 0 || lov < 0)
                throw std::invalid_argument("set file: bad hex digit");
            unsigned byte = unsigned(hiv) << 4 | unsigned(lov);
            for (unsigned bit = 0; bit < 8; ++bit) {
                if (!((byte >> bit) & 1)) continue;
                std::uint64_t idx = b * 8 + bit;
                if (idx >= g.order)
                    throw std::invalid_argument("set file: stray high bits in mask");
                s.set(idx);
            }
        }
        return s;
    }
    if (enc == "points") {
        for (const auto& row : j.at("data")) {
            std::vector<std::uint32_t> ds = row.get<std::vector<std::uint32_t>>();
            if (ds.size() != g.n)
                throw std::invalid_argument("set file: digit array length mismatch");
            for (auto d : ds)
                if (d >= g.p)
                    throw std::invalid_argument("set file: digit out of range");
            s.set(g.from_digits(ds));
        }
        return s;
    }
    throw std::invalid_argument("set file: unknown encoding '" + enc + "'");
}

GroupSet parse_set_file(const std::string& path) {
    return parse_set_json(read_file(path));
}

std::string set_to_json(const GroupSet& s) {
    const GroupSpec& g = s.spec();
    std::uint64_t bytes = (g.order + 7) / 8;
    std::string hex(2 * bytes, '0');
    static const char* digits = "0123456789abcdef";
    const auto& words = s.words();
    for (std::uint64_t b = 0; b < bytes; ++b) {
        unsigned byte = unsigned(words[b / 8] >> ((b % 8) * 8)) & 0xff;
        hex[2 * b] = digits[byte >> 4];
        hex[2 * b + 1] = digits[byte & 0xf];
    }
    json j;
    j["schema"] = "f2lab/1";
    j["p"] = g.p;
    j["n"] = g.n;
    j["encoding"] = "hexmask";
    j["data"] = hex;
    return j.dump(2) + "\n";
}

Subspace parse_subspace_json(const std::string& text) {
    json j = json::parse(text);
    GroupSpec g = spec_from_json(j);
    std::vector<point_t> rows;
    for (const auto& row : j.at("basis")) {
        if (row.is_string()) {
            std::string h = row.get<std::string>();
            point_t v = 0;
            for (char c : h) {
                int hv = hex_val(c);
                if (hv < 0)
                    throw std::invalid_argument("subspace file: bad hex digit");
                v = v << 4 | point_t(hv);
            }
            if (v >= g.order)
                throw std::invalid_argument("subspace file: row outside group");
            rows.push_back(v);
        } else {
            std::vector<std::uint32_t> ds = row.get<std::vector<std::uint32_t>>();
            if (ds.size() != g.n)
                throw std::invalid_argument("subspace file: digit array length mismatch");
            for (auto d : ds)
                if (d >= g.p)
                    throw std::invalid_argument("subspace file: digit out of range");
            rows.push_back(g.from_digits(ds));
        }
    }
    return Subspace::span(g, rows);
}

Subspace parse_subspace_file(const std::string& path) {
    return parse_subspace_json(read_file(path));
}

std::string subspace_to_json(const Subspace& v) {
    const GroupSpec& g = v.ambient();
    json j;
    j["schema"] = "f2lab/1";
    j["p"] = g.p;
    j["n"] = g.n;
    json basis = json::array();
    for (point_t row : v.basis()) {
        if (g.p == 2) {
            char buf[32];
            std::snprintf(buf, sizeof buf, "%llx", (unsigned long long)row);
            basis.push_back(std::string(buf));
        } else {
            basis.push_back(g.digits(row));
        }
    }
    j["basis"] = basis;
    return j.dump(2) + "\n";
}

void atomic_write(const std::string& path, const std::string& content) {
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open " + tmp);
        out << content;
        if (!out) throw std::runtime_error("write failed: " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw std::runtime_error("rename failed: " + path);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace f2lab
