#include <algorithm>
#include <array>
#include <fstream>
#include <memory>

#include <openssl/evp.h>

#include "internal.hpp"
#include "rrg/error.hpp"

namespace rrg::harness {
namespace fs = std::filesystem;
using nlohmann::json;

std::string sha256_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot read " + path.string());
    std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), &EVP_MD_CTX_free);
    if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1) throw Error("SHA-256 unavailable");
    std::array<char, 1 << 16> buf;
    while (in) {
        in.read(buf.data(), buf.size());
        if (in.gcount() > 0) EVP_DigestUpdate(ctx.get(), buf.data(), static_cast<std::size_t>(in.gcount()));
    }
    std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
    unsigned len = 0;
    EVP_DigestFinal_ex(ctx.get(), md.data(), &len);
    static constexpr char hex[] = "0123456789abcdef";
    std::string out;
    for (unsigned i = 0; i < len; ++i) {
        out += hex[md[i] >> 4];
        out += hex[md[i] & 0xF];
    }
    return out;
}

namespace {

json file_list(const fs::path& dir) {
    std::vector<fs::path> files;
    for (const auto& entry : fs::recursive_directory_iterator(dir)) {
        if (!entry.is_regular_file()) continue;
        const fs::path rel = fs::relative(entry.path(), dir);
        if (rel == "manifest.json") continue;
        files.push_back(rel);
    }
    std::sort(files.begin(), files.end());
    json list = json::array();
    for (const auto& rel : files) {
        list.push_back({{"path", rel.generic_string()},
                        {"sha256", sha256_file(dir / rel)},
                        {"bytes", fs::file_size(dir / rel)}});
    }
    return list;
}

void save(const fs::path& dir, const json& m) {
    std::ofstream out(dir / "manifest.json");
    out << m.dump(2) << '\n';
    if (!out) throw Error("failed writing manifest in " + dir.string());
}

}  // namespace

void write_manifest(const fs::path& dir, const OutputRecord& record) {
    json cells = json::array();
    json errors = json::object();
    for (const auto& c : record.cells) {
        const std::string name = detail::cell_dir_name(c.cell);
        cells.push_back({{"name", name}, {"n", c.cell.n}, {"z", c.cell.z}, {"status", c.ok() ? "ok" : "failed"}});
        if (!c.ok()) {
            cells.back()["error"] = c.error;
            errors[name] = c.error;
        }
    }
    json m = {{"files", file_list(dir)}, {"cells", cells}, {"cell_errors", errors}};
    if (record.verification) m["verification_pass"] = record.verification->all_pass();
    save(dir, m);
}

void refresh_manifest(const fs::path& dir) {
    std::ifstream in(dir / "manifest.json");
    if (!in) throw Error("no manifest.json in " + dir.string());
    json m = json::parse(in);
    in.close();
    m["files"] = file_list(dir);
    save(dir, m);
}

}  // namespace rrg::harness
