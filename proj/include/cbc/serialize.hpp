#ifndef CBC_SERIALIZE_HPP
#define CBC_SERIALIZE_HPP

#include <string>
#include <vector>

#include <json.hpp>

#include "cbc/group.hpp"
#include "cbc/theorems.hpp"

namespace cbc {

using json = nlohmann::ordered_json;

inline json subgroup_descriptor(const Subgroup& S) {
  json d;
  d["order"] = S.order();
  auto g = S.generator_indices();
  std::sort(g.begin(), g.end());
  d["generator_indices"] = g;
  return d;
}

inline json certificate_json(const GroupTable& G, const TheoremOneCertificate& cert) {
  json j;
  json input;
  input["group_label"] = G.label();
  input["p"] = G.prime();
  input["order"] = G.order();
  input["n"] = cert.n;
  input["m"] = cert.m;
  json clist = json::array();
  for (const auto& C : cert.Cs) clist.push_back(subgroup_descriptor(C));
  input["c_list"] = clist;
  j["input"] = input;
  json steps = json::array();
  for (const auto& st : cert.steps) {
    json s;
    s["case"] = step_case_name(st.kase);
    s["n"] = st.n;
    s["m"] = st.m;
    if (st.P) s["P"] = subgroup_descriptor(*st.P);
    if (st.D1) s["D1"] = subgroup_descriptor(*st.D1);
    if (st.D2) s["D2"] = subgroup_descriptor(*st.D2);
    if (st.D) s["D"] = subgroup_descriptor(*st.D);
    steps.push_back(s);
  }
  j["steps"] = steps;
  j["result"] = subgroup_descriptor(cert.result);
  json post;
  post["B1"] = cert.B1;
  post["B2"] = cert.B2;
  post["B3"] = cert.B3;
  post["B4"] = cert.B4;
  post["index_log"] = cert.index_log_value;
  post["cl_f"] = cert.cl_f_value;
  post["witness_element"] = cert.witness_element;
  j["postconditions"] = post;
  return j;
}

inline std::string emit_certificate(const GroupTable& G,
                                    const TheoremOneCertificate& cert) {
  return certificate_json(G, cert).dump(2) + "\n";
}

inline const char* kSurveyCsvHeader = "label,p,order,breadth,class,status,t2_index,t2_class,ms";

// CSV with the timing column last so golden comparisons can strip it.
inline std::string emit_survey_csv(const std::vector<SurveyRow>& rows) {
  std::string out = std::string(kSurveyCsvHeader) + "\n";
  for (const auto& r : rows) {
    out += r.label + "," + std::to_string(r.p) + "," + std::to_string(r.order) +
           "," + std::to_string(r.breadth) + "," + std::to_string(r.cl) + "," +
           (r.status ? "true" : "false") + "," + std::to_string(r.t2_index) +
           "," + std::to_string(r.t2_class) + "," + std::to_string(r.ms) + "\n";
  }
  return out;
}

inline json survey_json(const std::vector<SurveyRow>& rows) {
  json arr = json::array();
  for (const auto& r : rows) {
    json j;
    j["label"] = r.label;
    j["p"] = r.p;
    j["order"] = r.order;
    j["breadth"] = r.breadth;
    j["class"] = r.cl;
    j["status"] = r.status;
    j["t2_index"] = r.t2_index;
    j["t2_class"] = r.t2_class;
    j["ms"] = r.ms;
    arr.push_back(j);
  }
  return arr;
}

}  // namespace cbc

#endif
