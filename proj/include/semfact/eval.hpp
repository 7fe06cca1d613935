#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "semfact/corpus.hpp"
#include "semfact/pipeline.hpp"

namespace semfact {

struct Prediction {
    std::string id;
    VerdictLabel verdict = VerdictLabel::NEI;
    std::string evidence;
};

std::vector<Prediction> predictions_from_results(const std::vector<VerificationResult>& results);

// Predictions file: JSON array of {"id", "verdict", "evidence"} in that key order.
std::string predictions_to_json(const std::vector<Prediction>& preds);
std::vector<Prediction> predictions_from_json(std::string_view json_text);
std::vector<Prediction> load_predictions(const std::filesystem::path& path);
void save_predictions(const std::filesystem::path& path, const std::vector<Prediction>& preds);

struct LabelStats {
    int count = 0;    // gold records with this label
    int correct = 0;  // of those, verdict predicted correctly
};

struct EvalReport {
    double strict_acc = 0.0;
    double vc_acc = 0.0;
    double er_acc = 0.0;
    int n = 0;
    std::map<VerdictLabel, LabelStats> per_label;
    double total_time_ms = 0.0;
};

// All three metrics pair predictions with gold records by id (any order; the sets of
// ids must coincide exactly, else IdMismatch). Evidence is compared as normalized
// exact match. Gold-NEI records carry no evidence; their evidence indicator is
// defined as "predicted verdict is NEI", which keeps strict <= min(vc, er).
double strict_accuracy(const std::vector<Prediction>& preds, const std::vector<VerificationRecord>& gold);
double vc_accuracy(const std::vector<Prediction>& preds, const std::vector<VerificationRecord>& gold);
double er_accuracy(const std::vector<Prediction>& preds, const std::vector<VerificationRecord>& gold);

EvalReport evaluate(const std::vector<Prediction>& preds, const std::vector<VerificationRecord>& gold,
                    double total_time_ms = 0.0);

// One row per named report, sorted by strict accuracy descending. Columns: Strict Acc,
// VC Acc, ER Acc, Time. The text form carries a footer stating the NEI evidence
// convention.
std::string compare_report_text(const std::vector<std::pair<std::string, EvalReport>>& reports);
std::string compare_report_json(const std::vector<std::pair<std::string, EvalReport>>& reports);

}  // namespace semfact
