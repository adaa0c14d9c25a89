#include "rwre/trajectory_io.hpp"

#include <fstream>
#include <sstream>

#include "rwre/errors.hpp"

namespace rwre {

void atomic_write_text(const std::filesystem::path& path, const std::string& content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + tmp.string() + " for writing");
    out << content;
    if (!out) throw IoError("write failed for " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw IoError("rename to " + path.string() + " failed: " + ec.message());
}

void write_trajectory(const std::filesystem::path& path, const Trajectory& traj,
                      const TrajectoryHeader& header) {
  std::string out = "#rwre-traj v1 dim=" + std::to_string(header.dim);
  if (header.replica) out += " replica=" + std::to_string(*header.replica);
  if (header.truncated) out += std::string(" truncated=") + (*header.truncated ? "true" : "false");
  out += '\n';
  for (std::size_t i = 0; i < traj.size(); ++i) {
    out += traj.jump(i).to_string();
    out += '\n';
  }
  atomic_write_text(path, out);
}

ReadTrajectory read_trajectory(const std::filesystem::path& path, const JumpSet& declared) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());

  std::string line;
  if (!std::getline(in, line)) throw IoError(path.string() + ": empty file (missing header)");
  std::istringstream hdr(line);
  std::string magic;
  hdr >> magic;
  if (magic != "#rwre-traj") throw IoError(path.string() + ":1: not a trajectory file");
  std::string version;
  hdr >> version;
  if (version != "v1") throw IoError(path.string() + ":1: unsupported version " + version);

  ReadTrajectory out;
  std::string field;
  while (hdr >> field) {
    auto eq = field.find('=');
    if (eq == std::string::npos) throw IoError(path.string() + ":1: malformed header field");
    std::string key = field.substr(0, eq), value = field.substr(eq + 1);
    if (key == "dim") {
      out.header.dim = std::stoi(value);
    } else if (key == "replica") {
      out.header.replica = std::stoi(value);
    } else if (key == "truncated") {
      out.header.truncated = (value == "true");
    } else {
      throw IoError(path.string() + ":1: unknown header field " + key);
    }
  }
  if (out.header.dim != declared.dim()) {
    throw IoError(path.string() + ":1: dimension " + std::to_string(out.header.dim) +
                  " does not match the configured dimension " + std::to_string(declared.dim()));
  }

  out.traj = Trajectory(declared);
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    GroupElement g;
    try {
      g = GroupElement::parse(line);
    } catch (const IoError& e) {
      throw IoError(path.string() + ":" + std::to_string(lineno) + ": " + e.what());
    }
    auto idx = declared.index_of(g);
    if (!idx) {
      throw IoError(path.string() + ":" + std::to_string(lineno) + ": jump " + g.to_string() +
                    " not in the declared jump set");
    }
    out.traj.append(*idx);
  }
  return out;
}

}  // namespace rwre
