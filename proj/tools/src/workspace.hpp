#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "cohup/model/cohesion_model.hpp"
#include "cohup/store/delta_set.hpp"

namespace cohup::cli {

std::string read_text(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, const std::string& text);

struct PendingWhatif {
    std::string command;
    DeltaSet seeds;
};

/// State shared between invocations: the current model and the seeds of the
/// last what-if, kept as fact files under one directory.
class Workspace {
public:
    Workspace(std::filesystem::path dir, std::optional<std::filesystem::path> model_override);

    const std::filesystem::path& model_path() const noexcept { return model_path_; }
    std::filesystem::path whatif_path() const { return dir_ / "last_whatif.facts"; }

    CohesionModel load_model() const;
    void store_model(const CohesionModel& model) const;

    void store_whatif(const PendingWhatif& pending) const;
    std::optional<PendingWhatif> load_whatif() const;
    void clear_whatif() const;

private:
    std::filesystem::path dir_;
    std::filesystem::path model_path_;
};

} // namespace cohup::cli
