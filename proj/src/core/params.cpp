#include "params.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace qrouter {

namespace {

double parse_double(const std::string& key, const std::string& text)
{
    try {
        std::size_t pos = 0;
        double v = std::stod(text, &pos);
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos])))
            ++pos;
        if (pos != text.size())
            throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw Error(ErrorCode::ConfigError,
                    "cannot parse value '" + text + "' for key '" + key + "'");
    }
}

} // namespace

void SystemParams::set(const std::string& key, double value)
{
    if (key == "omega_a") omega_a = value;
    else if (key == "omega_b") omega_b = value;
    else if (key == "omega_c") omega_c = value;
    else if (key == "omega_d") omega_d = value;
    else if (key == "xi") xi = value;
    else if (key == "g_a1") g_a1 = value;
    else if (key == "g_a2") g_a2 = value;
    else if (key == "g_b3") g_b3 = value;
    else if (key == "g_b4") g_b4 = value;
    else if (key == "g_c1") g_c1 = value;
    else if (key == "g_c3") g_c3 = value;
    else if (key == "g_d2") g_d2 = value;
    else if (key == "g_d4") g_d4 = value;
    else if (key == "omega_e1") { omega_e1 = value; delta_es1 = omega_e1 - omega_s1_eff; }
    else if (key == "omega_e2") omega_e2 = value;
    else if (key == "omega_e3") omega_e3 = value;
    else if (key == "omega_e4") { omega_e4 = value; delta_es4 = omega_e4 - omega_s4_eff; }
    else if (key == "omega_s1_eff") { omega_s1_eff = value; delta_es1 = omega_e1 - omega_s1_eff; }
    else if (key == "omega_s4_eff") { omega_s4_eff = value; delta_es4 = omega_e4 - omega_s4_eff; }
    else if (key == "Omega1") Omega1 = value;
    else if (key == "Omega2") Omega2 = value;
    else if (key == "phi") phi = value;
    else if (key == "l") {
        double r = std::round(value);
        if (std::abs(value - r) > 1e-9)
            throw Error(ErrorCode::ConfigError, "l must be an integer, got " + std::to_string(value));
        l = static_cast<int>(r);
    }
    else if (key == "delta_es1") { delta_es1 = value; omega_s1_eff = omega_e1 - value; }
    else if (key == "delta_es4") { delta_es4 = value; omega_s4_eff = omega_e4 - value; }
    // group keys
    else if (key == "omega") {
        omega_a = omega_b = omega_c = omega_d = value;
        omega_e1 = omega_e2 = omega_e3 = omega_e4 = value;
        omega_s1_eff = omega_e1 - delta_es1;
        omega_s4_eff = omega_e4 - delta_es4;
    }
    else if (key == "g_a") g_a1 = g_a2 = g_b3 = g_b4 = value;
    else if (key == "g_s") g_c1 = g_c3 = g_d2 = g_d4 = value;
    else if (key == "Omega") Omega1 = Omega2 = value;
    else
        throw Error(ErrorCode::ConfigError, "unknown parameter key '" + key + "'");
}

void SystemParams::set(const std::string& key, const std::string& value)
{
    set(key, parse_double(key, value));
}

bool SystemParams::is_symmetric() const
{
    const double tol = 0.0; // exact: the analytic engine assumes strict equality
    auto eq = [&](double a, double b) { return std::abs(a - b) <= tol; };
    const double w = omega_a;
    return eq(g_a1, g_a2) && eq(g_a1, g_b3) && eq(g_a1, g_b4)
        && eq(g_c1, g_c3) && eq(g_c1, g_d2) && eq(g_c1, g_d4)
        && eq(omega_b, w) && eq(omega_c, w) && eq(omega_d, w)
        && eq(omega_e1, w) && eq(omega_e2, w) && eq(omega_e3, w) && eq(omega_e4, w)
        && eq(omega_s1_eff, w) && eq(omega_s4_eff, w)
        && delta_es1 == 0.0 && delta_es4 == 0.0;
}

std::map<std::string, double> SystemParams::as_map() const
{
    return {
        {"omega_a", omega_a}, {"omega_b", omega_b}, {"omega_c", omega_c}, {"omega_d", omega_d},
        {"xi", xi},
        {"g_a1", g_a1}, {"g_a2", g_a2}, {"g_b3", g_b3}, {"g_b4", g_b4},
        {"g_c1", g_c1}, {"g_c3", g_c3}, {"g_d2", g_d2}, {"g_d4", g_d4},
        {"omega_e1", omega_e1}, {"omega_e2", omega_e2}, {"omega_e3", omega_e3}, {"omega_e4", omega_e4},
        {"omega_s1_eff", omega_s1_eff}, {"omega_s4_eff", omega_s4_eff},
        {"Omega1", Omega1}, {"Omega2", Omega2},
        {"phi", phi}, {"l", static_cast<double>(l)},
        {"delta_es1", delta_es1}, {"delta_es4", delta_es4},
    };
}

SystemParams load_config_stream(std::istream& in, const std::string& label)
{
    SystemParams p;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos)
            line.erase(hash);
        auto is_blank = line.find_first_not_of(" \t\r") == std::string::npos;
        if (is_blank)
            continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw Error(ErrorCode::ConfigError,
                        label + ":" + std::to_string(lineno) + ": expected 'name = value'");
        auto trim = [](std::string s) {
            auto b = s.find_first_not_of(" \t\r");
            auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        try {
            p.set(key, value);
        } catch (const Error& err) {
            throw Error(err.code(),
                        label + ":" + std::to_string(lineno) + ": " + err.what());
        }
    }
    return p;
}

SystemParams load_config_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw Error(ErrorCode::ConfigError, "cannot open config file '" + path + "'");
    return load_config_stream(in, path);
}

ValidatedParams validate(const SystemParams& params)
{
    auto fail = [](const std::string& field, const std::string& reason) {
        throw Error(ErrorCode::ViolatedInvariant, field + ": " + reason);
    };
    if (!(params.xi > 0.0))
        fail("xi", "hopping strength must be positive");
    if (params.l < 1)
        fail("l", "node separation must be >= 1");
    const std::pair<const char*, double> nonneg[] = {
        {"g_a1", params.g_a1}, {"g_a2", params.g_a2}, {"g_b3", params.g_b3}, {"g_b4", params.g_b4},
        {"g_c1", params.g_c1}, {"g_c3", params.g_c3}, {"g_d2", params.g_d2}, {"g_d4", params.g_d4},
        {"Omega1", params.Omega1}, {"Omega2", params.Omega2},
    };
    for (const auto& [name, v] : nonneg)
        if (v < 0.0)
            fail(name, "must be nonnegative (phases carry the signs)");
    for (const auto& [name, v] : params.as_map())
        if (!std::isfinite(v))
            fail(name, "must be finite");

    ValidatedParams vp;
    vp.p_ = params;
    vp.symmetric_ = params.is_symmetric();
    return vp;
}

const char* port_name(IncidencePort p)
{
    switch (p) {
    case IncidencePort::LeftA: return "LeftA";
    case IncidencePort::LeftB: return "LeftB";
    case IncidencePort::RightA: return "RightA";
    case IncidencePort::RightB: return "RightB";
    }
    return "?";
}

IncidencePort port_from_name(const std::string& name)
{
    if (name == "LeftA") return IncidencePort::LeftA;
    if (name == "LeftB") return IncidencePort::LeftB;
    if (name == "RightA") return IncidencePort::RightA;
    if (name == "RightB") return IncidencePort::RightB;
    throw Error(ErrorCode::BadArgument, "unknown incidence port '" + name + "'");
}

} // namespace qrouter
