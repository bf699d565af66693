#include "dioph/report.hpp"

#include <json.hpp>

#include <sstream>

namespace dioph {

using nlohmann::json;

std::string to_json_line(const BranchReport& br) {
    json j;
    j["k"] = br.k.get_str();
    j["nu"] = br.nu;
    j["sign"] = br.sign > 0 ? "+" : "-";
    if (br.lambda) j["lambda"] = *br.lambda;
    else j["lambda"] = nullptr;
    j["kind"] = br.kind;
    j["verdict"] = br.verdict;
    j["m_bound"] = br.m_bound.get_str();
    j["rounds"] = br.rounds;
    json sols = json::array();
    for (const auto& s : br.solutions) {
        json e;
        e["m"] = s.m.get_str();
        e["l"] = s.l.get_str();
        e["x"] = s.x.get_str();
        e["d"] = s.d.get_str();
        e["tag"] = s.tag;
        sols.push_back(e);
    }
    j["solutions"] = sols;
    j["trail"] = br.trail;
    return j.dump();
}

BranchReport branch_from_json_line(const std::string& line) {
    json j = json::parse(line);
    BranchReport br;
    br.k = Integer(j.at("k").get<std::string>());
    br.nu = j.at("nu").get<int>();
    br.sign = j.at("sign").get<std::string>() == "+" ? 1 : -1;
    if (!j.at("lambda").is_null()) br.lambda = j.at("lambda").get<int>();
    br.kind = j.at("kind").get<std::string>();
    br.verdict = j.at("verdict").get<std::string>();
    br.m_bound = Integer(j.at("m_bound").get<std::string>());
    br.rounds = j.at("rounds").get<int>();
    for (const auto& e : j.at("solutions")) {
        SolutionRecord s;
        s.m = Integer(e.at("m").get<std::string>());
        s.l = Integer(e.at("l").get<std::string>());
        s.x = Integer(e.at("x").get<std::string>());
        s.d = Integer(e.at("d").get<std::string>());
        s.tag = e.at("tag").get<std::string>();
        br.solutions.push_back(s);
    }
    for (const auto& t : j.at("trail")) br.trail.push_back(t.get<std::string>());
    return br;
}

std::string csv_header() { return "k,nu,sign,lambda,kind,verdict,m_bound,rounds,solutions"; }

std::string to_csv_row(const BranchReport& br) {
    std::ostringstream os;
    os << br.k.get_str() << ',' << br.nu << ',' << (br.sign > 0 ? '+' : '-') << ',';
    if (br.lambda) os << *br.lambda;
    os << ',' << br.kind << ',' << br.verdict << ',' << br.m_bound.get_str() << ',' << br.rounds << ','
       << br.solutions.size();
    return os.str();
}

std::string to_text(const BranchReport& br) {
    std::ostringstream os;
    os << "k=" << br.k.get_str() << " nu=" << br.nu << " sign=" << (br.sign > 0 ? '+' : '-');
    if (br.lambda) os << " lambda=" << *br.lambda;
    os << " [" << br.kind << "] verdict=" << br.verdict;
    if (br.rounds > 0) os << " (m<=" << br.m_bound.get_str() << " after " << br.rounds << " rounds)";
    for (const auto& s : br.solutions) {
        os << "\n    m=" << s.m.get_str() << " l=" << s.l.get_str() << " x=" << s.x.get_str()
           << " d=" << s.d.get_str() << " " << s.tag;
    }
    for (const auto& t : br.trail) os << "\n    . " << t;
    return os.str();
}

}  // namespace dioph
