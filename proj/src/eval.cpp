#include "semfact/eval.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include <json.hpp>

#include "semfact/errors.hpp"

namespace semfact {

using nlohmann::ordered_json;

std::vector<Prediction> predictions_from_results(const std::vector<VerificationResult>& results) {
    std::vector<Prediction> preds;
    preds.reserve(results.size());
    for (const VerificationResult& r : results) preds.push_back({r.record_id, r.verdict, r.evidence});
    return preds;
}

std::string predictions_to_json(const std::vector<Prediction>& preds) {
    ordered_json arr = ordered_json::array();
    for (const Prediction& p : preds) {
        ordered_json obj;
        obj["id"] = p.id;
        obj["verdict"] = std::string(to_string(p.verdict));
        obj["evidence"] = p.evidence;
        arr.push_back(std::move(obj));
    }
    return arr.dump(2) + "\n";
}

std::vector<Prediction> predictions_from_json(std::string_view json_text) {
    ordered_json root;
    try {
        root = ordered_json::parse(json_text);
    } catch (const ordered_json::parse_error& e) {
        throw Error(std::string("predictions: invalid JSON: ") + e.what());
    }
    if (!root.is_array()) throw Error("predictions: top-level JSON value must be an array");

    std::vector<Prediction> preds;
    preds.reserve(root.size());
    for (const auto& obj : root) {
        if (!obj.is_object() || !obj.contains("id") || !obj.contains("verdict") || !obj.contains("evidence"))
            throw Error("predictions: every entry needs \"id\", \"verdict\", and \"evidence\"");
        Prediction p;
        p.id = obj.at("id").get<std::string>();
        const std::string v = obj.at("verdict").get<std::string>();
        const auto verdict = verdict_from_string(v);
        if (!verdict) throw Error("predictions: invalid verdict \"" + v + "\" for id '" + p.id + "'");
        p.verdict = *verdict;
        p.evidence = obj.at("evidence").is_null() ? std::string() : obj.at("evidence").get<std::string>();
        preds.push_back(std::move(p));
    }
    return preds;
}

std::vector<Prediction> load_predictions(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open predictions file: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return predictions_from_json(buf.str());
}

void save_predictions(const std::filesystem::path& path, const std::vector<Prediction>& preds) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write predictions file: " + path.string());
    out << predictions_to_json(preds);
}

namespace {

struct Indicators {
    bool verdict_ok = false;
    bool evidence_ok = false;
    VerdictLabel gold_label = VerdictLabel::NEI;
};

// Pairs predictions with gold records by id; the id sets must coincide exactly.
// Indicators come back in gold order.
std::vector<Indicators> align(const std::vector<Prediction>& preds,
                              const std::vector<VerificationRecord>& gold) {
    if (preds.size() != gold.size())
        throw IdMismatch("prediction count " + std::to_string(preds.size()) +
                         " does not match gold count " + std::to_string(gold.size()));

    std::unordered_map<std::string, const Prediction*> by_id;
    by_id.reserve(preds.size());
    for (const Prediction& p : preds) {
        if (!by_id.emplace(p.id, &p).second) throw IdMismatch("duplicate prediction id '" + p.id + "'");
    }

    std::vector<Indicators> out;
    out.reserve(gold.size());
    for (const VerificationRecord& rec : gold) {
        const auto it = by_id.find(rec.id);
        if (it == by_id.end()) throw IdMismatch("no prediction for gold id '" + rec.id + "'");
        if (!rec.gold_verdict) throw MissingGoldVerdict("gold record '" + rec.id + "' has no verdict");
        const Prediction& pred = *it->second;

        Indicators ind;
        ind.gold_label = *rec.gold_verdict;
        ind.verdict_ok = pred.verdict == *rec.gold_verdict;
        if (*rec.gold_verdict == VerdictLabel::NEI) {
            // NEI gold carries no evidence; the evidence match is "predicted NEI".
            ind.evidence_ok = pred.verdict == VerdictLabel::NEI;
        } else {
            if (!rec.gold_evidence)
                throw MalformedRecord(rec.id, "gold evidence missing for a non-NEI verdict");
            ind.evidence_ok = normalize_text(pred.evidence) == *rec.gold_evidence;
        }
        out.push_back(ind);
    }
    return out;
}

double mean_of(const std::vector<Indicators>& inds, bool (*pick)(const Indicators&)) {
    if (inds.empty()) return 0.0;
    int hits = 0;
    for (const Indicators& ind : inds)
        if (pick(ind)) ++hits;
    return static_cast<double>(hits) / static_cast<double>(inds.size());
}

}  // namespace

double strict_accuracy(const std::vector<Prediction>& preds, const std::vector<VerificationRecord>& gold) {
    return mean_of(align(preds, gold), [](const Indicators& i) { return i.verdict_ok && i.evidence_ok; });
}

double vc_accuracy(const std::vector<Prediction>& preds, const std::vector<VerificationRecord>& gold) {
    return mean_of(align(preds, gold), [](const Indicators& i) { return i.verdict_ok; });
}

double er_accuracy(const std::vector<Prediction>& preds, const std::vector<VerificationRecord>& gold) {
    return mean_of(align(preds, gold), [](const Indicators& i) { return i.evidence_ok; });
}

EvalReport evaluate(const std::vector<Prediction>& preds, const std::vector<VerificationRecord>& gold,
                    double total_time_ms) {
    const auto inds = align(preds, gold);

    EvalReport report;
    report.n = static_cast<int>(inds.size());
    report.total_time_ms = total_time_ms;
    int strict = 0, vc = 0, er = 0;
    for (const Indicators& ind : inds) {
        if (ind.verdict_ok && ind.evidence_ok) ++strict;
        if (ind.verdict_ok) ++vc;
        if (ind.evidence_ok) ++er;
        LabelStats& stats = report.per_label[ind.gold_label];
        ++stats.count;
        if (ind.verdict_ok) ++stats.correct;
    }
    if (report.n > 0) {
        report.strict_acc = static_cast<double>(strict) / report.n;
        report.vc_acc = static_cast<double>(vc) / report.n;
        report.er_acc = static_cast<double>(er) / report.n;
    }
    return report;
}

namespace {

std::vector<std::pair<std::string, EvalReport>> sorted_by_strict(
    std::vector<std::pair<std::string, EvalReport>> reports) {
    std::stable_sort(reports.begin(), reports.end(), [](const auto& a, const auto& b) {
        return a.second.strict_acc > b.second.strict_acc;
    });
    return reports;
}

std::string pct(double fraction) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", fraction * 100.0);
    return buf;
}

std::string seconds(double ms) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", ms / 1000.0);
    return buf;
}

}  // namespace

std::string compare_report_text(const std::vector<std::pair<std::string, EvalReport>>& reports) {
    const auto rows = sorted_by_strict(reports);

    std::size_t name_width = 4;  // "Name"
    for (const auto& [name, _] : rows) name_width = std::max(name_width, name.size());

    std::ostringstream out;
    out << std::left;
    out.width(static_cast<int>(name_width));
    out << "Name";
    out << "  Strict Acc    VC Acc    ER Acc  Time (s)\n";
    for (const auto& [name, report] : rows) {
        std::ostringstream line;
        line << std::left;
        line.width(static_cast<int>(name_width));
        line << name;
        line << "  ";
        const auto cell = [&line](const std::string& value, int width) {
            line << std::right;
            line.width(width);
            line << value;
        };
        cell(pct(report.strict_acc), 10);
        cell(pct(report.vc_acc), 10);
        cell(pct(report.er_acc), 10);
        cell(seconds(report.total_time_ms), 10);
        out << line.str() << "\n";
    }
    out << "\nEvidence match for gold-NEI samples counts as correct iff the predicted verdict is NEI.\n";
    return out.str();
}

std::string compare_report_json(const std::vector<std::pair<std::string, EvalReport>>& reports) {
    const auto rows = sorted_by_strict(reports);

    ordered_json arr = ordered_json::array();
    for (const auto& [name, report] : rows) {
        ordered_json row;
        row["name"] = name;
        row["strict_acc"] = report.strict_acc;
        row["vc_acc"] = report.vc_acc;
        row["er_acc"] = report.er_acc;
        row["n"] = report.n;
        row["time_ms"] = report.total_time_ms;
        ordered_json per_label = ordered_json::object();
        for (const auto& [label, stats] : report.per_label) {
            per_label[std::string(to_string(label))] = {{"count", stats.count}, {"correct", stats.correct}};
        }
        row["per_label"] = std::move(per_label);
        arr.push_back(std::move(row));
    }
    ordered_json root;
    root["reports"] = std::move(arr);
    root["note"] = "Evidence match for gold-NEI samples counts as correct iff the predicted verdict is NEI.";
    return root.dump(2) + "\n";
}

}  // namespace semfact
