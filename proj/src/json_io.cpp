#include "autota/json_io.hpp"

#include <fstream>
#include <sstream>

#include "autota/error.hpp"
#include "autota/text.hpp"

namespace autota {

namespace {

Json quote_id_array(const std::set<QuoteId>& ids) {
    Json arr = Json::array();
    for (const QuoteId& q : ids) arr.push_back(q.str());
    return arr;
}

std::set<QuoteId> quote_id_set(const Json& arr) {
    std::set<QuoteId> out;
    for (const auto& item : arr) out.insert(parse_quote_id(item.get<std::string>()));
    return out;
}

Json string_array(const std::set<std::string>& items) {
    Json arr = Json::array();
    for (const std::string& s : items) arr.push_back(s);
    return arr;
}

Json proposal_array(const std::vector<EditProposal>& proposals) {
    Json arr = Json::array();
    for (const EditProposal& p : proposals) arr.push_back(to_json(p));
    return arr;
}

} // namespace

Json to_json(const QuoteId& q) { return q.str(); }

Json to_json(const Utterance& u) {
    return Json{{"quote_id", u.quote_id.str()}, {"speaker", u.speaker}, {"text", u.text}};
}

Json to_json(const Transcript& t) {
    Json utterances = Json::array();
    for (const Utterance& u : t.utterances) utterances.push_back(to_json(u));
    return Json{{"id", t.id}, {"utterances", std::move(utterances)}};
}

Json to_json(const Code& c) {
    return Json{{"label", c.label},
                {"description", c.description},
                {"quote_ids", quote_id_array(c.quote_ids)},
                {"role", c.role}};
}

Json to_json(const Theme& t) {
    return Json{{"id", t.id},
                {"title", t.title},
                {"description", t.description},
                {"supporting_quote_ids", quote_id_array(t.supporting_quote_ids)},
                {"source_code_labels", string_array(t.source_code_labels)},
                {"word_count", t.word_count()}};
}

Json to_json(const ThemeSet& ts) {
    Json themes = Json::array();
    for (const Theme& t : ts.themes) themes.push_back(to_json(t));
    return Json{{"iteration", ts.iteration},
                {"transcript_ids", ts.transcript_ids},
                {"next_theme_id", ts.next_theme_id},
                {"themes", std::move(themes)}};
}

Json to_json(const ScoreVector& s) {
    return Json{{"credibility", s.credibility},
                {"dependability", s.dependability},
                {"transferability", s.transferability}};
}

Json to_json(const ThemeDraft& d) {
    return Json{{"title", d.title},
                {"description", d.description},
                {"quote_ids", quote_id_array(d.quote_ids)},
                {"source_code_labels", string_array(d.source_code_labels)}};
}

Json to_json(const EditProposal& e) {
    Json payload = Json::array();
    for (const ThemeDraft& d : e.payload) payload.push_back(to_json(d));
    return Json{{"kind", to_string(e.kind)},
                {"target_theme_ids", e.target_theme_ids},
                {"payload", std::move(payload)},
                {"rationale", e.rationale}};
}

Json to_json(const AgentExchange& ex) {
    return Json{{"identity", ex.identity}, {"stage", ex.stage},   {"prompt", ex.prompt},
                {"response", ex.response}, {"timestamp", ex.timestamp}, {"ref", ex.ref}};
}

Json to_json(const IterationRecord& r) {
    Json exchanges = Json::array();
    for (const AgentExchange& ex : r.agent_transcripts) exchanges.push_back(to_json(ex));
    return Json{{"iteration", r.iteration},
                {"theme_set", to_json(r.theme_set)},
                {"score_vector", to_json(r.score)},
                {"proposals", proposal_array(r.proposals)},
                {"applied_edits", proposal_array(r.applied_edits)},
                {"skipped_edits", proposal_array(r.skipped_edits)},
                {"agent_transcripts", std::move(exchanges)},
                {"warnings", r.warnings},
                {"converged", r.converged}};
}

Json to_json(const AuditTrail& a) {
    Json iterations = Json::array();
    for (const IterationRecord& r : a.iterations) iterations.push_back(to_json(r));
    Json out{{"run_seed", a.run_seed},
             {"iterations", std::move(iterations)},
             {"final_theme_set_id", a.final_theme_set_id}};
    if (!a.pending_exchanges.empty()) { // only a partial flush carries these
        Json pending = Json::array();
        for (const AgentExchange& ex : a.pending_exchanges) pending.push_back(to_json(ex));
        out["pending_exchanges"] = std::move(pending);
    }
    return out;
}

Json to_json(const reward::RewardModel& m) {
    return Json{{"weights", m.weights},
                {"bias", m.bias},
                {"metadata",
                 Json{{"epochs", m.metadata.epochs},
                      {"learning_rate", m.metadata.learning_rate},
                      {"final_loss", m.metadata.final_loss}}}};
}

QuoteId quote_id_from_json(const Json& j) { return parse_quote_id(j.get<std::string>()); }

Theme theme_from_json(const Json& j) {
    Theme t;
    t.id = j.at("id").get<std::string>();
    t.title = j.at("title").get<std::string>();
    t.description = j.value("description", std::string{});
    if (j.contains("supporting_quote_ids")) t.supporting_quote_ids = quote_id_set(j.at("supporting_quote_ids"));
    if (j.contains("source_code_labels")) {
        for (const auto& s : j.at("source_code_labels")) t.source_code_labels.insert(s.get<std::string>());
    }
    return t;
}

ThemeSet theme_set_from_json(const Json& j) {
    ThemeSet ts;
    ts.iteration = j.at("iteration").get<int>();
    ts.transcript_ids = j.value("transcript_ids", std::vector<std::string>{});
    ts.next_theme_id = j.value("next_theme_id", std::uint64_t{1});
    std::set<std::string> ids;
    for (const auto& theme : j.at("themes")) {
        Theme t = theme_from_json(theme);
        if (!ids.insert(t.id).second) {
            throw Error(ErrorKind::ParseError, "duplicate theme id '" + t.id + "' in theme set");
        }
        ts.themes.push_back(std::move(t));
    }
    return ts;
}

EditProposal edit_proposal_from_json(const Json& j) {
    EditProposal e;
    e.kind = edit_kind_from_string(j.at("kind").get<std::string>());
    e.target_theme_ids = j.value("target_theme_ids", std::vector<std::string>{});
    if (j.contains("payload")) {
        for (const auto& d : j.at("payload")) {
            ThemeDraft draft;
            draft.title = d.at("title").get<std::string>();
            draft.description = d.value("description", std::string{});
            if (d.contains("quote_ids")) draft.quote_ids = quote_id_set(d.at("quote_ids"));
            if (d.contains("source_code_labels")) {
                for (const auto& s : d.at("source_code_labels")) draft.source_code_labels.insert(s.get<std::string>());
            }
            e.payload.push_back(std::move(draft));
        }
    }
    e.rationale = j.value("rationale", std::string{});
    return e;
}

AuditTrail audit_trail_from_json(const Json& j) {
    AuditTrail a;
    a.run_seed = j.at("run_seed").get<std::uint64_t>();
    a.final_theme_set_id = j.value("final_theme_set_id", std::string{});
    for (const auto& rec : j.at("iterations")) {
        IterationRecord r;
        r.iteration = rec.at("iteration").get<int>();
        r.theme_set = theme_set_from_json(rec.at("theme_set"));
        r.score.credibility = rec.at("score_vector").at("credibility").get<double>();
        r.score.dependability = rec.at("score_vector").at("dependability").get<double>();
        r.score.transferability = rec.at("score_vector").at("transferability").get<double>();
        for (const auto& p : rec.value("proposals", Json::array())) r.proposals.push_back(edit_proposal_from_json(p));
        for (const auto& p : rec.value("applied_edits", Json::array())) r.applied_edits.push_back(edit_proposal_from_json(p));
        for (const auto& p : rec.value("skipped_edits", Json::array())) r.skipped_edits.push_back(edit_proposal_from_json(p));
        for (const auto& ex : rec.value("agent_transcripts", Json::array())) {
            AgentExchange exchange;
            exchange.identity = ex.at("identity").get<std::string>();
            exchange.stage = ex.at("stage").get<std::string>();
            exchange.prompt = ex.at("prompt").get<std::string>();
            exchange.response = ex.at("response").get<std::string>();
            exchange.timestamp = ex.at("timestamp").get<std::uint64_t>();
            exchange.ref = ex.value("ref", std::string{});
            r.agent_transcripts.push_back(std::move(exchange));
        }
        r.warnings = rec.value("warnings", std::vector<std::string>{});
        r.converged = rec.value("converged", false);
        a.iterations.push_back(std::move(r));
    }
    return a;
}

reward::RewardModel reward_model_from_json(const Json& j) {
    reward::RewardModel m;
    auto weights = j.at("weights").get<std::vector<double>>();
    if (weights.size() != reward::kFeatureDim) {
        throw Error(ErrorKind::ParseError,
                    "reward model has " + std::to_string(weights.size()) + " weights, expected " +
                        std::to_string(reward::kFeatureDim));
    }
    std::copy(weights.begin(), weights.end(), m.weights.begin());
    m.bias = j.at("bias").get<double>();
    if (j.contains("metadata")) {
        const auto& meta = j.at("metadata");
        m.metadata.epochs = meta.value("epochs", 0);
        m.metadata.learning_rate = meta.value("learning_rate", 0.0);
        m.metadata.final_loss = meta.value("final_loss", 0.0);
    }
    return m;
}

reward::RewardRecord reward_record_from_json(const Json& j) {
    reward::RewardRecord r;
    r.theme_set_id = j.at("theme_set_id").get<std::string>();
    r.rating = j.at("rating").get<int>();
    if (r.rating != 0 && r.rating != 1) {
        throw Error(ErrorKind::ParseError, "rating must be 0 or 1, got " + std::to_string(r.rating));
    }
    if (j.contains("criteria_notes")) {
        for (const auto& [key, value] : j.at("criteria_notes").items()) {
            bool known = false;
            for (const char* criterion : reward::kRatingCriteria) {
                if (key == criterion) known = true;
            }
            if (!known) throw Error(ErrorKind::ParseError, "unknown rating criterion '" + key + "'");
            r.criteria_notes[key] = value.get<std::string>();
        }
    }
    r.rater = j.value("rater", std::string{});
    r.timestamp = j.value("timestamp", std::string{});
    return r;
}

std::vector<std::pair<std::string, std::string>> theme_list_from_json(const Json& j) {
    if (!j.is_array()) throw Error(ErrorKind::ParseError, "theme list must be a JSON array");
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& item : j) {
        if (item.is_string()) {
            out.emplace_back(item.get<std::string>(), std::string{});
        } else {
            out.emplace_back(item.at("title").get<std::string>(), item.value("description", std::string{}));
        }
    }
    return out;
}

std::string theme_text(const std::string& title, const std::string& description) {
    if (description.empty()) return title;
    return title + " " + description;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::IoError, "cannot open '" + path + "' for reading");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorKind::IoError, "cannot open '" + path + "' for writing");
    out << content;
    if (!out) throw Error(ErrorKind::IoError, "failed writing '" + path + "'");
}

Json read_json_file(const std::string& path) {
    std::string raw = read_text_file(path);
    try {
        return Json::parse(raw);
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(ErrorKind::ParseError, "bad JSON in '" + path + "': " + e.what());
    }
}

void write_json_file(const std::string& path, const Json& j) {
    write_text_file(path, j.dump(2) + "\n");
}

} // namespace autota
