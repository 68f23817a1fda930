#include "autota/model.hpp"

#include <algorithm>
#include <cmath>

#include "autota/error.hpp"
#include "autota/text.hpp"

namespace autota {

std::size_t Theme::word_count() const {
    return text::count_words(title) + text::count_words(description);
}

const Theme* ThemeSet::find(const std::string& theme_id) const {
    for (const Theme& theme : themes) {
        if (theme.id == theme_id) return &theme;
    }
    return nullptr;
}

std::set<QuoteId> ThemeSet::all_quote_ids() const {
    std::set<QuoteId> all;
    for (const Theme& theme : themes) {
        all.insert(theme.supporting_quote_ids.begin(), theme.supporting_quote_ids.end());
    }
    return all;
}

std::string allocate_theme_id(ThemeSet& ts) {
    return "t" + std::to_string(ts.next_theme_id++);
}

std::vector<std::string> theme_warnings(const ThemeSet& ts) {
    std::vector<std::string> warnings;
    for (const Theme& theme : ts.themes) {
        std::size_t words = theme.word_count();
        if (words > kThemeWordLimit) {
            warnings.push_back("theme " + theme.id + " ('" + theme.title + "') runs " +
                               std::to_string(words) + " words, over the advisory limit of " +
                               std::to_string(kThemeWordLimit));
        }
    }
    return warnings;
}

std::array<double, 3> ScoreVector::normalized() const {
    return {credibility / 100.0, dependability, transferability};
}

double l1_distance(const ScoreVector& a, const ScoreVector& b) {
    auto na = a.normalized();
    auto nb = b.normalized();
    double d = 0.0;
    for (std::size_t i = 0; i < na.size(); ++i) d += std::fabs(na[i] - nb[i]);
    return d;
}

const char* to_string(EditKind kind) {
    switch (kind) {
        case EditKind::Add: return "add";
        case EditKind::Split: return "split";
        case EditKind::Combine: return "combine";
        case EditKind::Delete: return "delete";
    }
    return "unknown";
}

EditKind edit_kind_from_string(const std::string& s) {
    std::string k = text::fold_case(text::trim(s));
    if (k == "add") return EditKind::Add;
    if (k == "split") return EditKind::Split;
    if (k == "combine") return EditKind::Combine;
    if (k == "delete") return EditKind::Delete;
    throw Error(ErrorKind::ParseError, "unknown edit kind '" + s + "'");
}

void validate_proposal(const EditProposal& e) {
    const std::size_t targets = e.target_theme_ids.size();
    std::set<std::string> distinct(e.target_theme_ids.begin(), e.target_theme_ids.end());
    if (distinct.size() != targets) {
        throw Error(ErrorKind::ArityMismatch, "duplicate target theme ids in " + std::string(to_string(e.kind)));
    }
    switch (e.kind) {
        case EditKind::Add:
            if (targets != 0) throw Error(ErrorKind::ArityMismatch, "add takes no targets");
            if (e.payload.size() != 1) throw Error(ErrorKind::MissingPayload, "add needs one theme draft");
            break;
        case EditKind::Delete:
            if (targets != 1) throw Error(ErrorKind::ArityMismatch, "delete takes exactly one target");
            break;
        case EditKind::Split:
            if (targets != 1) throw Error(ErrorKind::ArityMismatch, "split takes exactly one target");
            if (e.payload.size() != 2) throw Error(ErrorKind::MissingPayload, "split needs two theme drafts");
            break;
        case EditKind::Combine:
            if (targets < 2) throw Error(ErrorKind::ArityMismatch, "combine takes at least two targets");
            break;
    }
}

namespace {

Theme theme_from_draft(ThemeSet& ts, const ThemeDraft& draft) {
    Theme theme;
    theme.id = allocate_theme_id(ts);
    theme.title = draft.title;
    theme.description = draft.description;
    theme.supporting_quote_ids = draft.quote_ids;
    theme.source_code_labels = draft.source_code_labels;
    return theme;
}

std::size_t index_of(const ThemeSet& ts, const std::string& theme_id) {
    for (std::size_t i = 0; i < ts.themes.size(); ++i) {
        if (ts.themes[i].id == theme_id) return i;
    }
    throw Error(ErrorKind::UnknownThemeId, "no theme with id '" + theme_id + "'");
}

} // namespace

ThemeSet apply_edit(const ThemeSet& ts, const EditProposal& e) {
    validate_proposal(e);
    ThemeSet out = ts;
    switch (e.kind) {
        case EditKind::Add: {
            out.themes.push_back(theme_from_draft(out, e.payload.front()));
            break;
        }
        case EditKind::Delete: {
            out.themes.erase(out.themes.begin() + static_cast<std::ptrdiff_t>(index_of(out, e.target_theme_ids.front())));
            break;
        }
        case EditKind::Combine: {
            std::vector<std::size_t> indices;
            indices.reserve(e.target_theme_ids.size());
            for (const std::string& id : e.target_theme_ids) indices.push_back(index_of(out, id));

            Theme merged;
            merged.id = allocate_theme_id(out);
            // Merge in target order: first target names the theme, the rest
            // contribute distinct descriptions.
            std::vector<std::string> descriptions;
            for (std::size_t idx : indices) {
                const Theme& part = out.themes[idx];
                if (merged.title.empty()) merged.title = part.title;
                if (!part.description.empty() &&
                    std::find(descriptions.begin(), descriptions.end(), part.description) == descriptions.end()) {
                    descriptions.push_back(part.description);
                }
                merged.supporting_quote_ids.insert(part.supporting_quote_ids.begin(),
                                                   part.supporting_quote_ids.end());
                merged.source_code_labels.insert(part.source_code_labels.begin(),
                                                 part.source_code_labels.end());
            }
            merged.description = text::join(descriptions, "; ");

            std::vector<std::size_t> sorted = indices;
            std::sort(sorted.rbegin(), sorted.rend());
            for (std::size_t idx : sorted) out.themes.erase(out.themes.begin() + static_cast<std::ptrdiff_t>(idx));
            // The merged theme takes the position of the first target.
            std::size_t insert_at = *std::min_element(indices.begin(), indices.end());
            out.themes.insert(out.themes.begin() + static_cast<std::ptrdiff_t>(insert_at), std::move(merged));
            break;
        }
        case EditKind::Split: {
            std::size_t idx = index_of(out, e.target_theme_ids.front());
            const std::set<QuoteId> original = out.themes[idx].supporting_quote_ids;
            const std::set<std::string> labels = out.themes[idx].source_code_labels;

            std::array<Theme, 2> halves;
            for (std::size_t h = 0; h < 2; ++h) {
                const ThemeDraft& draft = e.payload[h];
                halves[h] = theme_from_draft(out, draft);
                halves[h].source_code_labels = labels;
                halves[h].supporting_quote_ids.clear();
                // Hints only partition the target's own quotes.
                for (const QuoteId& q : draft.quote_ids) {
                    if (original.count(q) > 0) halves[h].supporting_quote_ids.insert(q);
                }
            }
            // Quotes claimed by neither hint are duplicated into both halves.
            for (const QuoteId& q : original) {
                if (e.payload[0].quote_ids.count(q) == 0 && e.payload[1].quote_ids.count(q) == 0) {
                    halves[0].supporting_quote_ids.insert(q);
                    halves[1].supporting_quote_ids.insert(q);
                }
            }
            out.themes.erase(out.themes.begin() + static_cast<std::ptrdiff_t>(idx));
            out.themes.insert(out.themes.begin() + static_cast<std::ptrdiff_t>(idx), halves[1]);
            out.themes.insert(out.themes.begin() + static_cast<std::ptrdiff_t>(idx), halves[0]);
            break;
        }
    }
    return out;
}

} // namespace autota
