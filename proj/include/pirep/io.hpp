#pragma once
#include "pirep/expr.hpp"
#include "pirep/catalog.hpp"
#include "pirep/rep.hpp"

namespace pirep {

json group_to_json(const FiniteGroup& G);
GroupPtr group_from_json(const json& j);
json mat_to_json(const Mat& M);  // row-major Cyc list
Mat mat_from_json(const json& j, int n);
json rep_to_json(const Rep& r);
// reuses `G` when its table matches the embedded group
RepPtr rep_from_json(const json& j, const GroupPtr& G = nullptr);


// catalog:<group>:<rep> (rep after the last ':') or file:<path>
RepPtr resolve_rep(const std::string& ref);
// catalog:<group> or a bare catalog group name
CatalogGroup resolve_group(const std::string& ref);
json read_json_file(const std::string& path);
// 64-bit FNV-1a of the text, hex
std::string content_hash(const std::string& text);

}  // namespace pirep
