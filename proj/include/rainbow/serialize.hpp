#pragma once

// JSON forms of results. Rationals are written as "p/q" strings so values
// survive round trips exactly.

#include <json.hpp>

#include <stdexcept>
#include <string>

#include "rainbow/expander.hpp"
#include "rainbow/ladder.hpp"
#include "rainbow/rainbow_search.hpp"
#include "rainbow/rational.hpp"
#include "rainbow/subdivision.hpp"

namespace rainbow {

using Json = nlohmann::ordered_json;

inline constexpr const char* json_schema_version = "1";

inline Json to_json(const RainbowPath& p)
{
    return Json{{"vertices", p.vertices}, {"colours", p.colours}};
}

inline Json to_json(const SubdivisionCertificate& c)
{
    Json paths = Json::array();
    for (const auto& p : c.paths) {
        paths.push_back({{"i", p.i}, {"j", p.j}, {"vertices", p.path.vertices}, {"colours", p.path.colours}});
    }
    return Json{{"branch", c.branch}, {"length_bound", c.length_bound}, {"paths", paths}};
}

/// Reads a certificate object (optionally wrapped under "certificate").
/// Throws std::invalid_argument on malformed input.
inline SubdivisionCertificate certificate_from_json(const Json& j)
{
    try {
        const Json& c = j.contains("certificate") ? j.at("certificate") : j;
        SubdivisionCertificate out;
        out.branch = c.at("branch").get<std::vector<Vertex>>();
        out.length_bound = c.value("length_bound", std::int64_t{0});
        for (const auto& p : c.at("paths")) {
            PairPath pp;
            pp.i = p.at("i").get<std::size_t>();
            pp.j = p.at("j").get<std::size_t>();
            pp.path.vertices = p.at("vertices").get<std::vector<Vertex>>();
            pp.path.colours = p.at("colours").get<std::vector<Colour>>();
            out.paths.push_back(std::move(pp));
        }
        return out;
    } catch (const Json::exception& e) {
        throw std::invalid_argument(std::string("malformed certificate: ") + e.what());
    }
}

inline Json to_json(const ParamLadder& p)
{
    return Json{{"mode", to_string(p.mode)},
                {"n", p.n},
                {"t", p.t},
                {"eps", to_string(p.eps)},
                {"lambda", to_string(p.lambda_rational)},
                {"paper_ell", p.paper_ell},
                {"ell", p.ell},
                {"reach_len", p.reach_len},
                {"L", p.L},
                {"K", p.K},
                {"M", p.M},
                {"path_bound", p.path_bound()}};
}

inline Json to_json(const ColourSplit& s)
{
    return Json{{"seed", s.seed}, {"retries", s.retries}, {"group_of_colour", s.group_of_colour}};
}

inline Json to_json(const PieceSummary& p)
{
    return Json{{"vertices", p.vertices},
                {"edges", p.edges},
                {"d", to_string(p.d)},
                {"certification", to_string(p.certification)}};
}

inline Json to_json(const ConnectTranscript& t)
{
    auto pieces = [](const std::vector<PieceSummary>& v) {
        Json a = Json::array();
        for (const auto& p : v) {
            a.push_back(to_json(p));
        }
        return a;
    };
    auto entries = [](const std::vector<EntryPoint>& v) {
        Json a = Json::array();
        for (const auto& e : v) {
            a.push_back({{"piece", e.piece}, {"vertex", e.vertex}, {"path_length", e.path_length}});
        }
        return a;
    };
    auto tri = [](const std::optional<bool>& b) { return b ? Json(*b) : Json(nullptr); };
    Json j{{"failed_stage", to_string(t.failed_stage)},
           {"detail", t.detail},
           {"early_exit", t.early_exit},
           {"split", t.split ? to_json(*t.split) : Json(nullptr)},
           {"cover1", pieces(t.cover1)},
           {"cover2", pieces(t.cover2)},
           {"uncovered1", t.uncovered1},
           {"uncovered2", t.uncovered2},
           {"reach_x", t.reach_x_size},
           {"reach_y", t.reach_y_size},
           {"entries_x", entries(t.entries_x)},
           {"entries_y", entries(t.entries_y)},
           {"f1", {{"vertices", t.f1_vertices}, {"colours", t.f1_colours}}},
           {"f2", {{"vertices", t.f2_vertices}, {"colours", t.f2_colours}}},
           {"avoid", {{"vertices", t.avoid_vertices}, {"colours", t.avoid_colours}, {"bound", t.avoid_bound}}},
           {"inner_reach1", t.inner_reach1},
           {"inner_reach2", t.inner_reach2},
           {"edge_to_vertex1", tri(t.edge_to_vertex1)},
           {"edge_to_vertex2", tri(t.edge_to_vertex2)},
           {"meeting", t.meeting ? Json(*t.meeting) : Json(nullptr)},
           {"walk_length", t.walk_length},
           {"path_length", t.path_length},
           {"length_bound", t.length_bound}};
    return j;
}

inline Json to_json(const IncrementTrace& t)
{
    Json steps = Json::array();
    for (const auto& s : t.steps) {
        steps.push_back({{"vertices", s.vertices}, {"edges", s.edges}, {"d", to_string(s.d)}});
    }
    return Json{{"K", t.K}, {"m", t.m()}, {"steps", steps}, {"stop_reason", t.stop_reason}};
}

inline Json to_json(const SubdivisionOutcome& o)
{
    Json j{{"trace", to_json(o.trace)}};
    j["ladder"] = o.ladder ? to_json(*o.ladder) : Json(nullptr);
    if (o.expander) {
        j["expander"] = {{"vertices", o.expander->vertices},
                         {"edges", o.expander->edges},
                         {"d", to_string(o.expander->d)},
                         {"certification", to_string(o.expander->certification)},
                         {"shrink_steps", o.expander->shrink_steps}};
    } else {
        j["expander"] = nullptr;
    }
    j["failed_stage"] = to_string(o.failed_stage);
    j["detail"] = o.detail;
    if (o.build && o.build->failure) {
        const auto& f = *o.build->failure;
        j["failed_pair"] = {{"i", f.i}, {"j", f.j}, {"transcript", to_json(f.transcript)}};
        j["partial"] = to_json(o.build->certificate);
    }
    j["certificate"] = o.certificate ? to_json(*o.certificate) : Json(nullptr);
    return j;
}

} // namespace rainbow
