#ifndef LYRICMOOD_CLI_HPP
#define LYRICMOOD_CLI_HPP

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "lyricmood/classifier.hpp"
#include "lyricmood/evaluation.hpp"
#include "lyricmood/knowledge_base.hpp"
#include "lyricmood/knowledge_graph.hpp"

namespace lyricmood::cli {

/// Exit statuses of the command-line tool.
enum ExitStatus : int { kOk = 0, kUsage = 1, kDataError = 2, kNoEvidence = 3 };

struct RunConfig {
    std::filesystem::path kb_path;
    std::optional<std::filesystem::path> stopwords_path;
    UpdatePolicy update_policy = UpdatePolicy::off;
    std::size_t top_k_terms = 5;
    std::uint64_t seed = 1;
    std::size_t train_per_mood = 50;
    std::size_t test_per_mood = 10;
    unsigned threads = 1;
};

struct PipelineResult {
    KnowledgeBase kb;
    EvalReport report;
    KnowledgeGraph graph;
};

/// Train on the split's train half, evaluate on the test half (applying the
/// configured update policy), and build the graph from the training songs
/// (their known moods) plus every test song that received a prediction.
PipelineResult run_pipeline(const std::filesystem::path& corpus_root, const RunConfig& config);

/// Writes kb.csv, report.json, confusion_matrix.csv and graph.{dot,graphml,cypher}
/// into `out_dir`, creating it if needed.
void write_pipeline_outputs(const PipelineResult& result, const std::filesystem::path& out_dir);

/// Parses and runs one command line (without the program name). Normal
/// output goes to `out`, diagnostics and usage text to `err`.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lyricmood::cli

#endif  // LYRICMOOD_CLI_HPP
