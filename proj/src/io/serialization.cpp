#include "genbounds/io/serialization.hpp"

#include <fstream>
#include <map>
#include <sstream>
#include <unordered_map>

#include "genbounds/errors.hpp"

namespace genbounds::io {

namespace {

using measures::Point;
using measures::Support;

[[noreturn]] void fail(const std::string& path, const std::string& why) {
    throw ParseError(path + ": " + why);
}

const Json& field(const Json& j, const char* key, const std::string& path) {
    if (!j.is_object()) fail(path, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) fail(path + "." + key, "missing field");
    return *it;
}

double number(const Json& j, const std::string& path) {
    if (!j.is_number()) fail(path, "expected a number");
    return j.get<double>();
}

Support support_from_json(const Json& j, const std::string& path) {
    if (!j.is_array() || j.empty()) fail(path, "expected a nonempty array");
    Support s;
    s.reserve(j.size());
    for (std::size_t i = 0; i < j.size(); ++i) {
        const Json& e = j[i];
        const std::string epath = path + "[" + std::to_string(i) + "]";
        if (e.is_string()) {
            s.emplace_back(e.get<std::string>());
        } else if (e.is_object()) {
            Point p(field(e, "label", epath).get<std::string>());
            if (e.contains("coord")) {
                for (const auto& c : e["coord"]) p.coord.push_back(number(c, epath + ".coord"));
            }
            s.push_back(std::move(p));
        } else {
            fail(epath, "support entries are strings or {label, coord} objects");
        }
    }
    return s;
}

Json support_to_json(const Support& s) {
    Json out = Json::array();
    for (const auto& p : s) {
        if (p.has_coord()) {
            Json e;
            e["label"] = p.label;
            e["coord"] = p.coord;
            out.push_back(std::move(e));
        } else {
            out.push_back(p.label);
        }
    }
    return out;
}

std::vector<double> numbers(const Json& j, const std::string& path) {
    if (!j.is_array()) fail(path, "expected an array of numbers");
    std::vector<double> v;
    v.reserve(j.size());
    for (std::size_t i = 0; i < j.size(); ++i) {
        v.push_back(number(j[i], path + "[" + std::to_string(i) + "]"));
    }
    return v;
}

}  // namespace

Json to_json(const measures::DiscreteDist& d) {
    Json j;
    j["support"] = support_to_json(d.support());
    j["probs"] = d.probs();
    return j;
}

measures::DiscreteDist dist_from_json(const Json& j) {
    Support s = support_from_json(field(j, "support", "distribution"), "distribution.support");
    std::vector<double> probs = numbers(field(j, "probs", "distribution"), "distribution.probs");
    try {
        return measures::DiscreteDist(std::move(s), std::move(probs));
    } catch (const ValidationError& e) {
        fail("distribution", e.what());
    }
}

Json to_json(const measures::JointTable& t) {
    Json j;
    j["w_support"] = support_to_json(t.w_support());
    j["z_support"] = support_to_json(t.z_support());
    Json rows = Json::array();
    for (std::size_t w = 0; w < t.w_size(); ++w) {
        Json row = Json::array();
        for (std::size_t z = 0; z < t.z_size(); ++z) row.push_back(t.at(w, z));
        rows.push_back(std::move(row));
    }
    j["p"] = std::move(rows);
    return j;
}

measures::JointTable joint_from_json(const Json& j) {
    Support w = support_from_json(field(j, "w_support", "joint"), "joint.w_support");
    Support z = support_from_json(field(j, "z_support", "joint"), "joint.z_support");
    const Json& rows = field(j, "p", "joint");
    if (!rows.is_array() || rows.size() != w.size()) {
        fail("joint.p", "expected " + std::to_string(w.size()) + " rows");
    }
    std::vector<double> p;
    p.reserve(w.size() * z.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        std::vector<double> row = numbers(rows[i], "joint.p[" + std::to_string(i) + "]");
        if (row.size() != z.size()) {
            fail("joint.p[" + std::to_string(i) + "]",
                 "expected " + std::to_string(z.size()) + " columns");
        }
        p.insert(p.end(), row.begin(), row.end());
    }
    try {
        return measures::JointTable(std::move(w), std::move(z), std::move(p));
    } catch (const ValidationError& e) {
        fail("joint", e.what());
    }
}

namespace {

std::string tuple_key(const avgjoint::LearnerSpec& learner, std::size_t tuple) {
    std::string key;
    for (int i = 0; i < learner.n(); ++i) {
        if (i > 0) key += ",";
        key += learner.z_support()[learner.digit(tuple, i)].label;
    }
    return key;
}

std::size_t tuple_index(const std::string& key, int n,
                        const std::unordered_map<std::string, std::size_t>& z_index,
                        std::size_t z_size, const std::string& path) {
    std::vector<std::string> parts;
    std::string cur;
    for (char ch : key) {
        if (ch == ',') {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    parts.push_back(cur);
    if (parts.size() != static_cast<std::size_t>(n)) {
        fail(path, "tuple '" + key + "' has " + std::to_string(parts.size()) +
                       " labels, expected " + std::to_string(n));
    }
    std::size_t idx = 0;
    for (const auto& label : parts) {
        auto it = z_index.find(label);
        if (it == z_index.end()) fail(path, "tuple '" + key + "' uses unknown label '" + label + "'");
        idx = idx * z_size + it->second;
    }
    return idx;
}

}  // namespace

Json to_json(const avgjoint::LearnerSpec& learner) {
    Json j;
    j["n"] = learner.n();
    j["z_support"] = support_to_json(learner.z_support());
    j["w_support"] = support_to_json(learner.w_support());
    Json ps = Json::object();
    Json cond = Json::object();
    for (std::size_t t = 0; t < learner.tuple_count(); ++t) {
        if (learner.p_s(t) <= 0.0) continue;
        const std::string key = tuple_key(learner, t);
        ps[key] = learner.p_s(t);
        Json row = Json::array();
        for (std::size_t w = 0; w < learner.w_size(); ++w) row.push_back(learner.p_w_given_s(t, w));
        cond[key] = std::move(row);
    }
    j["p_s"] = std::move(ps);
    j["p_w_given_s"] = std::move(cond);
    return j;
}

avgjoint::LearnerSpec learner_from_json(const Json& j, avgjoint::SizeCaps caps) {
    const int n = static_cast<int>(number(field(j, "n", "learner"), "learner.n"));
    Support z = support_from_json(field(j, "z_support", "learner"), "learner.z_support");
    Support w = support_from_json(field(j, "w_support", "learner"), "learner.w_support");

    std::unordered_map<std::string, std::size_t> z_index;
    for (std::size_t i = 0; i < z.size(); ++i) z_index[z[i].label] = i;

    if (n < 1) fail("learner.n", "must be >= 1");
    std::size_t tuples = 1;
    for (int i = 0; i < n; ++i) {
        if (tuples > caps.max_tuples / z.size()) {
            throw SizeCapExceeded("learner: |Z|^n exceeds enumeration cap");
        }
        tuples *= z.size();
    }

    std::vector<double> p_s(tuples, 0.0);
    const Json& ps = field(j, "p_s", "learner");
    if (!ps.is_object()) fail("learner.p_s", "expected an object of tuple -> probability");
    for (auto it = ps.begin(); it != ps.end(); ++it) {
        const std::size_t idx = tuple_index(it.key(), n, z_index, z.size(), "learner.p_s");
        p_s[idx] = number(it.value(), "learner.p_s['" + it.key() + "']");
    }

    // conditionals default to uniform on tuples the data law never produces
    std::vector<double> cond(tuples * w.size(), 1.0 / static_cast<double>(w.size()));
    std::vector<char> have(tuples, 0);
    const Json& pws = field(j, "p_w_given_s", "learner");
    if (!pws.is_object()) fail("learner.p_w_given_s", "expected an object of tuple -> row");
    for (auto it = pws.begin(); it != pws.end(); ++it) {
        const std::size_t idx = tuple_index(it.key(), n, z_index, z.size(), "learner.p_w_given_s");
        std::vector<double> row = numbers(it.value(), "learner.p_w_given_s['" + it.key() + "']");
        if (row.size() != w.size()) {
            fail("learner.p_w_given_s['" + it.key() + "']",
                 "expected " + std::to_string(w.size()) + " probabilities");
        }
        std::copy(row.begin(), row.end(), cond.begin() + static_cast<std::ptrdiff_t>(idx * w.size()));
        have[idx] = 1;
    }
    for (std::size_t t = 0; t < tuples; ++t) {
        if (p_s[t] > 0.0 && !have[t]) {
            fail("learner.p_w_given_s", "no conditional row for positive-probability tuple");
        }
    }

    try {
        return avgjoint::LearnerSpec(n, std::move(z), std::move(w), std::move(p_s),
                                     std::move(cond), caps);
    } catch (const ValidationError& e) {
        fail("learner", e.what());
    }
}

Json to_json(const avgjoint::LossTable& loss) {
    Json j;
    j["a"] = loss.a();
    j["b"] = loss.b();
    Json rows = Json::array();
    for (std::size_t w = 0; w < loss.w_size(); ++w) {
        Json row = Json::array();
        for (std::size_t z = 0; z < loss.z_size(); ++z) row.push_back(loss.at(w, z));
        rows.push_back(std::move(row));
    }
    j["values"] = std::move(rows);
    return j;
}

avgjoint::LossTable loss_from_json(const Json& j) {
    const double a = number(field(j, "a", "loss"), "loss.a");
    const double b = number(field(j, "b", "loss"), "loss.b");
    const Json& rows = field(j, "values", "loss");
    if (!rows.is_array() || rows.empty()) fail("loss.values", "expected a nonempty matrix");
    std::vector<double> values;
    std::size_t cols = 0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        std::vector<double> row = numbers(rows[i], "loss.values[" + std::to_string(i) + "]");
        if (i == 0) {
            cols = row.size();
        } else if (row.size() != cols) {
            fail("loss.values[" + std::to_string(i) + "]", "ragged matrix");
        }
        values.insert(values.end(), row.begin(), row.end());
    }
    try {
        return avgjoint::LossTable(a, b, rows.size(), cols, std::move(values));
    } catch (const ValidationError& e) {
        fail("loss", e.what());
    }
}

Json to_json(const bounds::BoundReport& report) {
    Json j;
    j["true_gen"] = {{"value", report.true_gen}, {"ci", report.ci}};
    Json entries = Json::object();
    for (const auto& name : bounds::BoundReport::names()) {
        const bounds::BoundEntry& e = report.entry(name);
        if (e.value) {
            entries[name] = {{"value", *e.value}};
        } else {
            entries[name] = {{"refused", e.refusal}};
        }
    }
    j["bounds"] = std::move(entries);
    return j;
}

Json parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open '" + path + "'");
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(path + ": " + e.what());
    }
}

void write_file(const std::string& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot write '" + path + "'");
    out << contents;
    if (!out) throw ConfigError("write failed for '" + path + "'");
}

}  // namespace genbounds::io
