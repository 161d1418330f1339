#include "standby/config.hpp"

#include <sstream>

#include "standby/report.hpp"

namespace standby {

namespace {

using nlohmann::json;

[[noreturn]] void bad(const std::string& path, const std::string& what) {
    throw Error(ErrorCode::ConfigInvalid, path + ": " + what);
}

const json& field(const json& obj, const std::string& key, const std::string& path) {
    if (!obj.is_object()) bad(path, "expected an object");
    auto it = obj.find(key);
    if (it == obj.end()) bad(path.empty() ? key : path + "." + key, "missing");
    return *it;
}

std::string join(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }

double number(const json& j, const std::string& path) {
    if (!j.is_number()) bad(path, "expected a number");
    return j.get<double>();
}

Vector vec(const json& j, const std::string& path) {
    if (!j.is_array() || j.empty()) bad(path, "expected a non-empty array of numbers");
    Vector v(static_cast<Index>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Index>(i)) = number(j[i], path + " entry " + std::to_string(i + 1));
    return v;
}

Matrix mat(const json& j, const std::string& path) {
    if (!j.is_array() || j.empty()) bad(path, "expected an array of rows");
    const std::size_t rows = j.size();
    Matrix m;
    for (std::size_t r = 0; r < rows; ++r) {
        const std::string rp = path + " row " + std::to_string(r + 1);
        Vector row = vec(j[r], rp);
        if (r == 0) m.resize(static_cast<Index>(rows), row.size());
        if (row.size() != m.cols()) bad(rp, "row length differs from row 1");
        m.row(static_cast<Index>(r)) = row.transpose();
    }
    if (m.rows() != m.cols()) bad(path, "expected a square matrix");
    return m;
}

// Probability checks with the field path in the message.
void check_prob_rows(const Matrix& m, const std::string& path, const Vector* extra1 = nullptr,
                     const Vector* extra2 = nullptr) {
    for (Index r = 0; r < m.rows(); ++r) {
        const std::string rp = path + " row " + std::to_string(r + 1);
        for (Index c = 0; c < m.cols(); ++c)
            if (m(r, c) < 0.0) bad(rp, "negative entry");
        double s = m.row(r).sum();
        if (s > 1.0 + 1e-12) {
            std::ostringstream os;
            os << "row sum " << s << " exceeds 1";
            bad(rp, os.str());
        }
        if (extra1) {
            double total = s + (*extra1)(r) + (*extra2)(r);
            if (std::abs(total - 1.0) > 1e-12) {
                std::ostringstream os;
                os << "transitions plus failure exits sum to " << total << ", expected 1";
                bad(rp, os.str());
            }
        }
    }
}

RowVector initial(const json& j, const std::string& path, Index order) {
    Vector v = vec(j, path);
    if (v.size() != order) bad(path, "length " + std::to_string(v.size()) + " differs from matrix order " + std::to_string(order));
    for (Index i = 0; i < v.size(); ++i)
        if (v(i) < 0.0) bad(path, "negative entry");
    if (std::abs(v.sum() - 1.0) > 1e-12) bad(path, "must sum to 1");
    return v.transpose();
}

DiscretePH ph(const json& obj, const std::string& path, const char* a, const char* s) {
    DiscretePH out;
    out.S = mat(field(obj, s, path), join(path, s));
    check_prob_rows(out.S, join(path, s));
    out.alpha = initial(field(obj, a, path), join(path, a), out.S.rows());
    return out;
}

Vector col_of(const json& obj, const char* key, const std::string& path, Index len) {
    Vector v = vec(field(obj, key, path), join(path, key));
    if (v.size() != len) bad(join(path, key), "expected length " + std::to_string(len));
    for (Index i = 0; i < len; ++i)
        if (v(i) < 0.0) bad(join(path, key) + " entry " + std::to_string(i + 1), "negative entry");
    return v;
}

DiscretePH vacation(const json& obj) {
    const std::string path = "vacation";
    if (obj.is_object() && obj.contains("family")) {
        const json& fam = field(obj, "family", path);
        if (!fam.is_string()) bad("vacation.family", "expected a string");
        Vector p = vec(field(obj, "params", path), "vacation.params");
        for (Index i = 0; i < p.size(); ++i)
            if (!(p(i) >= 0.0 && p(i) < 1.0)) bad("vacation.params", "values must lie in [0,1)");
        const std::string f = fam.get<std::string>();
        if (f == "geometric") {
            if (p.size() != 1) bad("vacation.params", "geometric takes one parameter");
            return geometric_ph(p(0));
        }
        if (f == "erlang2" || f == "generalized-erlang-2") {
            if (p.size() != 2) bad("vacation.params", "erlang2 takes two parameters");
            return generalized_erlang2_ph(p(0), p(1));
        }
        bad("vacation.family", "unknown family '" + f + "'");
    }
    return ph(obj, path, "v", "V");
}

int integer(const json& j, const std::string& path) {
    if (!j.is_number_integer()) bad(path, "expected an integer");
    return j.get<int>();
}

}  // namespace

ModelConfig parse_config(const json& doc) {
    ModelConfig cfg;
    OnlineUnitModel& u = cfg.model.unit;
    const json& unit = field(doc, "unit", "");
    u.T = mat(field(unit, "T", "unit"), "unit.T");
    const Index m = u.T.rows();
    u.T_r0 = col_of(unit, "T_r0", "unit", m);
    u.T_nr0 = col_of(unit, "T_nr0", "unit", m);
    check_prob_rows(u.T, "unit.T", &u.T_r0, &u.T_nr0);
    u.alpha = initial(field(unit, "alpha", "unit"), "unit.alpha", m);
    u.m1 = integer(field(unit, "m1", "unit"), "unit.m1");
    if (u.m1 < 1 || u.m1 >= m) bad("unit.m1", "need 1 <= m1 < m");
    u.W = mat(field(unit, "W", "unit"), "unit.W");
    if (u.W.rows() != m) bad("unit.W", "order differs from unit.T");
    u.W_r0 = col_of(unit, "W_r0", "unit", m);
    u.W_nr0 = col_of(unit, "W_nr0", "unit", m);
    check_prob_rows(u.W, "unit.W", &u.W_r0, &u.W_nr0);
    u.omega0 = number(field(unit, "omega0", "unit"), "unit.omega0");
    if (!(u.omega0 >= 0.0 && u.omega0 <= 1.0)) bad("unit.omega0", "must lie in [0,1]");
    u.shock = ph(field(unit, "shock", "unit"), "unit.shock", "gamma", "L");
    u.inspection = ph(field(unit, "inspection", "unit"), "unit.inspection", "eta", "M");

    cfg.model.repair = ph(field(doc, "repair", ""), "repair", "beta1", "S1");
    cfg.model.maintenance = ph(field(doc, "maintenance", ""), "maintenance", "beta2", "S2");
    cfg.model.vacation = vacation(field(doc, "vacation", ""));

    const json& fleet = field(doc, "fleet", "");
    cfg.model.n = integer(field(fleet, "n", "fleet"), "fleet.n");
    cfg.model.R = integer(field(fleet, "R", "fleet"), "fleet.R");

    const json& ec = field(doc, "economics", "");
    EconomicParams& e = cfg.economics;
    e.B = number(field(ec, "B", "economics"), "economics.B");
    e.c0 = vec(field(ec, "c0", "economics"), "economics.c0");
    e.cr1 = vec(field(ec, "cr1", "economics"), "economics.cr1");
    e.cr2 = vec(field(ec, "cr2", "economics"), "economics.cr2");
    e.H = number(field(ec, "H", "economics"), "economics.H");
    e.C = number(field(ec, "C", "economics"), "economics.C");
    e.G = number(field(ec, "G", "economics"), "economics.G");
    e.fcr = number(field(ec, "fcr", "economics"), "economics.fcr");
    e.fmi = number(field(ec, "fmi", "economics"), "economics.fmi");
    e.fnu = number(field(ec, "fnu", "economics"), "economics.fnu");

    // Remaining invariants (absorption, thresholds, lengths) via the model's own checks.
    try {
        cfg.model.validate();
        e.validate(cfg.model);
    } catch (const Error& err) {
        throw Error(ErrorCode::ConfigInvalid, err.what());
    }
    return cfg;
}

ModelConfig parse_config_text(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error(ErrorCode::ConfigInvalid, std::string("parse error: ") + e.what());
    }
    return parse_config(doc);
}

ModelConfig load_config(const std::filesystem::path& path) {
    return parse_config_text(read_file(path));
}

}  // namespace standby
