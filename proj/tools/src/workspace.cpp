#include "workspace.hpp"

#include <fstream>
#include <sstream>

#include "cohup/error.hpp"
#include "cohup/logic/parser.hpp"

namespace cohup::cli {

namespace fs = std::filesystem;

namespace {

constexpr std::string_view kCommandPrefix = "% command: ";

} // namespace

std::string read_text(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::Io, "cannot read " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_text(const fs::path& path, const std::string& text) {
    if (path.has_parent_path()) {
        std::error_code ec;
        fs::create_directories(path.parent_path(), ec);
        if (ec) throw Error(ErrorKind::Io, "cannot create " + path.parent_path().string() + ": " + ec.message());
    }
    const fs::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!(out << text)) throw Error(ErrorKind::Io, "cannot write " + tmp.string());
    }
    std::error_code ec;
    fs::rename(tmp, path, ec);
    if (ec) throw Error(ErrorKind::Io, "cannot replace " + path.string() + ": " + ec.message());
}

Workspace::Workspace(fs::path dir, std::optional<fs::path> model_override)
    : dir_(std::move(dir)), model_path_(model_override ? *model_override : dir_ / "model.facts") {}

CohesionModel Workspace::load_model() const {
    if (!fs::exists(model_path_)) {
        throw Error(ErrorKind::Io, "no model at " + model_path_.string() + " (run 'ingest' or pass --model)");
    }
    return parse_model(read_text(model_path_));
}

void Workspace::store_model(const CohesionModel& model) const { write_text(model_path_, model.to_text()); }

void Workspace::store_whatif(const PendingWhatif& pending) const {
    write_text(whatif_path(), std::string(kCommandPrefix) + pending.command + '\n' + pending.seeds.to_text());
}

std::optional<PendingWhatif> Workspace::load_whatif() const {
    if (!fs::exists(whatif_path())) return std::nullopt;
    const std::string text = read_text(whatif_path());
    PendingWhatif pending;
    if (text.starts_with(kCommandPrefix)) {
        pending.command = text.substr(kCommandPrefix.size(), text.find('\n') - kCommandPrefix.size());
    }
    pending.seeds = DeltaSet::from_facts(parse_fact_file(text));
    return pending;
}

void Workspace::clear_whatif() const {
    std::error_code ec;
    fs::remove(whatif_path(), ec);
}

} // namespace cohup::cli
