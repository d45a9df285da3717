#include "pirep/io.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace pirep {

json group_to_json(const FiniteGroup& G) {
    return json{{"order", G.order()}, {"table", G.table()}, {"labels", G.labels()}};
}

GroupPtr group_from_json(const json& j) {
    auto table = j.at("table").get<std::vector<std::vector<int>>>();
    if (int(table.size()) != j.at("order").get<int>()) throw std::invalid_argument("group order does not match table");
    return FiniteGroup::from_cayley_table(std::move(table), j.value("labels", std::vector<std::string>{}));
}

json mat_to_json(const Mat& M) {
    json a = json::array();
    for (auto& c : M.data()) a.push_back(cyc_to_json(c));
    return a;
}

Mat mat_from_json(const json& j, int n) {
    if (int(j.size()) != n * n) throw std::invalid_argument("matrix has the wrong number of entries");
    Mat M(n, n);
    for (int i = 0; i < n * n; ++i) M(i / n, i % n) = cyc_from_json(j[size_t(i)]);
    return M;
}

json rep_to_json(const Rep& r) {
    json images = json::array();
    for (auto& M : r.images()) images.push_back(mat_to_json(M));
    json j{{"group", group_to_json(*r.group())}, {"dim", r.dim()}, {"images", images}};
    if (!r.name().empty()) j["name"] = r.name();
    return j;
}

RepPtr rep_from_json(const json& j, const GroupPtr& G) {
    GroupPtr H = group_from_json(j.at("group"));
    if (G && G->table() == H->table()) H = G;
    int n = j.at("dim").get<int>();
    std::vector<Mat> images;
    for (auto& m : j.at("images")) images.push_back(mat_from_json(m, n));
    if (int(images.size()) != H->order()) throw std::invalid_argument("one image per group element is required");
    return Rep::make(H, std::move(images), j.value("name", ""));
}

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open " + path);
    return json::parse(in);
}

std::string content_hash(const std::string& text) {
    uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

CatalogGroup resolve_group(const std::string& ref) {
    std::string name = ref.rfind("catalog:", 0) == 0 ? ref.substr(8) : ref;
    return catalog_group(name);
}

RepPtr resolve_rep(const std::string& ref) {
    if (ref.rfind("file:", 0) == 0) return rep_from_json(read_json_file(ref.substr(5)));
    if (ref.rfind("catalog:", 0) != 0) throw std::invalid_argument("rep reference must start with catalog: or file:");
    auto cut = ref.rfind(':');
    if (cut <= 8) throw std::invalid_argument("rep reference needs catalog:<group>:<rep>");
    return catalog_group(ref.substr(8, cut - 8)).rep(ref.substr(cut + 1));
}

}  // namespace pirep
