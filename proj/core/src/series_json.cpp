#include "n4/series_json.hpp"

#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace n4 {

using ojson = nlohmann::ordered_json;

std::string to_json(const JacobiSeries& s, int indent)
{
    ojson j;
    j["q_den"] = s.q_den();
    j["x_den"] = s.x_den();
    j["q_order"] = order_to_string(s.q_order());
    if (s.x_window())
        j["x_window"] = ojson::array({to_string(s.x_window()->lo), to_string(s.x_window()->hi)});
    ojson terms = ojson::array();
    for (const auto& [k, c] : s.terms()) {
        ojson t;
        t["q"] = k.first;
        t["x"] = k.second;
        t["re"] = to_string(c.re);
        t["im"] = to_string(c.im);
        terms.push_back(std::move(t));
    }
    j["terms"] = std::move(terms);
    return j.dump(indent);
}

JacobiSeries series_from_json(std::string_view text)
{
    try {
        const ojson j = ojson::parse(text);
        const std::int64_t qd = j.at("q_den").get<std::int64_t>();
        const std::int64_t xd = j.at("x_den").get<std::int64_t>();
        const QOrder order = parse_order(j.at("q_order").get<std::string>());
        std::optional<XWindow> w;
        if (j.contains("x_window")) {
            const auto& a = j.at("x_window");
            w = XWindow{parse_rational(a.at(0).get<std::string>()), parse_rational(a.at(1).get<std::string>())};
        }
        JacobiSeries::Terms terms;
        for (const auto& t : j.at("terms")) {
            GaussianRational c(parse_rational(t.at("re").get<std::string>()),
                               parse_rational(t.at("im").get<std::string>()));
            if (!terms.emplace(JacobiSeries::Key{t.at("q").get<std::int64_t>(), t.at("x").get<std::int64_t>()}, c)
                     .second)
                throw std::invalid_argument("duplicate term");
        }
        return JacobiSeries(qd, xd, std::move(terms), order, w);
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("malformed series JSON: ") + e.what());
    }
}

std::string to_text(const JacobiSeries& s)
{
    std::ostringstream os;
    for (const auto& q : s.levels()) {
        os << "q^" << to_string(q) << ":";
        auto lvl = s.level(q);
        for (auto it = lvl.rbegin(); it != lvl.rend(); ++it)
            os << "  " << to_string(it->second) << "*x^" << to_string(it->first);
        os << "\n";
    }
    os << "O(q^" << order_to_string(s.q_order()) << ")";
    if (s.x_window())
        os << "  x in [" << to_string(s.x_window()->lo) << ", " << to_string(s.x_window()->hi) << "]";
    os << "\n";
    return os.str();
}

} // namespace n4
