#pragma once

#include <string>
#include <string_view>

#include "flimsim/codebook.hpp"
#include "flimsim/config.hpp"
#include "flimsim/sim.hpp"

namespace flimsim {

// SHA-1 hex digest, used as the content hash pinning codebooks in manifests.
std::string sha1_hex(std::string_view data);

// CSV renderers. All files carry a header row; float formatting is fixed so
// identical runs produce byte-identical files.
std::string abep_csv(const AbepCurve& curve);
std::string cn_csv(const CnMap& map);

std::string codebook_json(const Codebook& cb);
Codebook codebook_from_json(const std::string& text);

std::string config_json(const RunConfig& cfg);

// Run manifest: resolved config echo, seed, per-scheme codebook hashes and
// the emitted files.
std::string manifest_json(const RunConfig& cfg, const std::string& command,
                          const std::vector<std::pair<std::string, std::string>>& codebook_hashes,
                          const std::vector<std::string>& outputs, bool analytic);

void write_file(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);

}  // namespace flimsim
