#include "povatlas/artifacts.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "povatlas/errors.hpp"

namespace povatlas::artifacts {

namespace {

using json = nlohmann::json;

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw MissingArtifact("missing artifact: " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spit(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

json motor_json(const Motor& m) { return {m[0], m[1], m[2], m[3]}; }

Motor motor_from(const json& j) {
  return Motor(j.at(0).get<double>(), j.at(1).get<double>(), j.at(2).get<double>(),
               j.at(3).get<double>());
}

const char* reason_name(FailureReason r) {
  switch (r) {
    case FailureReason::NonCompensable: return "non_compensable";
    case FailureReason::SensoryMismatch: return "sensory_mismatch";
    default: return "none";
  }
}

FailureReason reason_from(const std::string& s) {
  if (s == "non_compensable") return FailureReason::NonCompensable;
  if (s == "sensory_mismatch") return FailureReason::SensoryMismatch;
  return FailureReason::None;
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (true) {
    std::size_t next = line.find(sep, pos);
    out.push_back(line.substr(pos, next - pos));
    if (next == std::string::npos) break;
    pos = next + 1;
  }
  return out;
}

double parse_double(const std::string& s) {
  double v = 0.0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size())
    throw CorruptArtifact("malformed number in artifact: '" + s + "'");
  return v;
}

}  // namespace

std::string embedding_file(int dim, bool regularized) {
  return std::string("embedding_") + (regularized ? "post" : "pre") + "_dim" +
         std::to_string(dim) + ".csv";
}

std::string regularized_distances_file(int dim) {
  return "distances_regularized_dim" + std::to_string(dim) + ".csv";
}

std::string format_double(double v) {
  char buf[32];
  auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  (void)ec;
  return std::string(buf, p);
}

void write_atlas(const std::filesystem::path& dir, const AtlasRecord& record) {
  json povs = json::array();
  for (std::size_t i = 0; i < record.atlas.povs.size(); ++i) {
    const PointOfView& p = record.atlas.povs[i];
    json members = json::array();
    for (const Motor& m : p.members) members.push_back(motor_json(m));
    povs.push_back({{"seed", motor_json(p.seed)},
                    {"pose_tag", {p.pose_tag.x, p.pose_tag.y, p.pose_tag.alpha}},
                    {"grid_index",
                     {record.atlas.grid_index[i].x(), record.atlas.grid_index[i].y()}},
                    {"members", std::move(members)}});
  }
  json offsets = json::array();
  for (const auto& o : record.object_offsets) offsets.push_back({o.x(), o.y()});
  json doc = {{"config_hash", record.config_hash},
              {"origin_pov_index", record.atlas.origin_pov_index},
              {"retina", record.retina.receptors},
              {"object_offsets", std::move(offsets)},
              {"povs", std::move(povs)}};
  spit(dir / kAtlas, doc.dump(2) + "\n");
}

AtlasRecord read_atlas(const std::filesystem::path& dir) {
  json doc;
  try {
    doc = json::parse(slurp(dir / kAtlas));
    AtlasRecord rec;
    rec.config_hash = doc.at("config_hash").get<std::uint64_t>();
    rec.atlas.origin_pov_index = doc.at("origin_pov_index").get<int>();
    rec.retina.receptors = doc.at("retina").get<std::vector<double>>();
    for (const auto& o : doc.at("object_offsets"))
      rec.object_offsets.emplace_back(o.at(0).get<double>(), o.at(1).get<double>());
    for (const auto& p : doc.at("povs")) {
      PointOfView pov;
      pov.seed = motor_from(p.at("seed"));
      const auto& tag = p.at("pose_tag");
      pov.pose_tag = {tag.at(0).get<double>(), tag.at(1).get<double>(),
                      tag.at(2).get<double>()};
      for (const auto& m : p.at("members")) pov.members.push_back(motor_from(m));
      rec.atlas.povs.push_back(std::move(pov));
      rec.atlas.grid_index.emplace_back(p.at("grid_index").at(0).get<int>(),
                                        p.at("grid_index").at(1).get<int>());
    }
    return rec;
  } catch (const json::exception& e) {
    throw CorruptArtifact(std::string("atlas record is malformed: ") + e.what());
  }
}

void write_episodes(const std::filesystem::path& dir,
                    const std::vector<EpisodeRecord>& episodes) {
  std::ostringstream out;
  out << "index,kind,delta_x,delta_y,node_qx,node_qy,success,reason,"
         "kinematic_residual,sensory_residual,pov_index\n";
  for (const EpisodeRecord& e : episodes) {
    out << e.index << ',' << (e.kind == EpisodeKind::State ? "state" : "spatial") << ','
        << format_double(e.delta.x()) << ',' << format_double(e.delta.y()) << ','
        << e.node.x() << ',' << e.node.y() << ',' << (e.success ? 1 : 0) << ','
        << reason_name(e.reason) << ',' << format_double(e.kinematic_residual) << ','
        << format_double(e.sensory_residual) << ',' << e.pov_index << '\n';
  }
  spit(dir / kEpisodes, out.str());
}

std::vector<EpisodeRecord> read_episodes(const std::filesystem::path& dir) {
  std::string text = slurp(dir / kEpisodes);
  std::istringstream in(text);
  std::string line;
  std::getline(in, line);  // header
  std::vector<EpisodeRecord> out;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto f = split(line, ',');
    if (f.size() != 11) throw CorruptArtifact("episode row has wrong arity");
    EpisodeRecord e;
    e.index = std::stoi(f[0]);
    e.kind = f[1] == "state" ? EpisodeKind::State : EpisodeKind::Spatial;
    e.delta = {parse_double(f[2]), parse_double(f[3])};
    e.node = {std::stoi(f[4]), std::stoi(f[5])};
    e.success = f[6] == "1";
    e.reason = reason_from(f[7]);
    e.kinematic_residual = parse_double(f[8]);
    e.sensory_residual = parse_double(f[9]);
    e.pov_index = std::stoi(f[10]);
    out.push_back(e);
  }
  return out;
}

void write_pose_tags(const std::filesystem::path& dir, const SpatialAtlas& atlas) {
  std::ostringstream out;
  out << "index,qx,qy,x,y,alpha\n";
  for (std::size_t i = 0; i < atlas.povs.size(); ++i) {
    const Pose& t = atlas.povs[i].pose_tag;
    out << i << ',' << atlas.grid_index[i].x() << ',' << atlas.grid_index[i].y() << ','
        << format_double(t.x) << ',' << format_double(t.y) << ','
        << format_double(t.alpha) << '\n';
  }
  spit(dir / kPoseTags, out.str());
}

void write_distances(const std::filesystem::path& path, const Eigen::MatrixXd& D) {
  std::ostringstream out;
  Eigen::Index n = D.rows();
  out << n << '\n';
  for (Eigen::Index i = 0; i + 1 < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      if (j > i + 1) out << ',';
      out << format_double(D(i, j));
    }
    out << '\n';
  }
  spit(path, out.str());
}

Eigen::MatrixXd read_distances(const std::filesystem::path& path) {
  std::istringstream in(slurp(path));
  std::string line;
  if (!std::getline(in, line)) throw CorruptArtifact("distance matrix lacks a size header");
  Eigen::Index n = 0;
  try {
    n = std::stol(line);
  } catch (...) {
    throw CorruptArtifact("distance matrix size header is not a number");
  }
  Eigen::MatrixXd D = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i + 1 < n; ++i) {
    if (!std::getline(in, line)) throw CorruptArtifact("distance matrix is truncated");
    auto f = split(line, ',');
    if (static_cast<Eigen::Index>(f.size()) != n - i - 1)
      throw CorruptArtifact("distance matrix row has wrong arity");
    for (Eigen::Index j = i + 1; j < n; ++j) {
      double v = parse_double(f[static_cast<std::size_t>(j - i - 1)]);
      D(i, j) = v;
      D(j, i) = v;
    }
  }
  return D;
}

void write_embedding(const std::filesystem::path& path, const Eigen::MatrixXd& E,
                     const SpatialAtlas& atlas) {
  std::ostringstream out;
  int dim = static_cast<int>(E.cols());
  out << "index";
  for (int d = 0; d < dim; ++d) out << ",e" << d;
  out << ",qx,qy,x,y,alpha\n";
  for (Eigen::Index i = 0; i < E.rows(); ++i) {
    out << i;
    for (int d = 0; d < dim; ++d) out << ',' << format_double(E(i, d));
    const Pose& t = atlas.povs[static_cast<std::size_t>(i)].pose_tag;
    out << ',' << atlas.grid_index[static_cast<std::size_t>(i)].x() << ','
        << atlas.grid_index[static_cast<std::size_t>(i)].y() << ','
        << format_double(t.x) << ',' << format_double(t.y) << ','
        << format_double(t.alpha) << '\n';
  }
  spit(path, out.str());
}

Eigen::MatrixXd read_embedding(const std::filesystem::path& path) {
  std::istringstream in(slurp(path));
  std::string line;
  if (!std::getline(in, line)) throw CorruptArtifact("embedding file lacks a header");
  auto header = split(line, ',');
  int dim = 0;
  while (dim + 1 < static_cast<int>(header.size()) &&
         header[static_cast<std::size_t>(dim + 1)] == "e" + std::to_string(dim))
    ++dim;
  if (dim == 0) throw CorruptArtifact("embedding file has no coordinate columns");
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto f = split(line, ',');
    if (f.size() < static_cast<std::size_t>(dim) + 1)
      throw CorruptArtifact("embedding row has wrong arity");
    std::vector<double> r(static_cast<std::size_t>(dim));
    for (int d = 0; d < dim; ++d) r[static_cast<std::size_t>(d)] = parse_double(f[static_cast<std::size_t>(d) + 1]);
    rows.push_back(std::move(r));
  }
  Eigen::MatrixXd E(static_cast<Eigen::Index>(rows.size()), dim);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (int d = 0; d < dim; ++d) E(static_cast<Eigen::Index>(i), d) = rows[i][static_cast<std::size_t>(d)];
  return E;
}

void write_trajectories(const std::filesystem::path& dir, const StraightnessReport& report) {
  std::ostringstream out;
  out << "pair,metric,step,node,m1,m2,m3,m4,x,y,alpha\n";
  auto emit = [&](std::size_t pair, const char* metric, const Trajectory& t) {
    for (std::size_t p = 0; p < t.node_path.size(); ++p) {
      const Motor& m = t.motor_path[p];
      const Pose& q = t.pose_path[p];
      out << pair << ',' << metric << ',' << p << ',' << t.node_path[p];
      for (int k = 0; k < 4; ++k) out << ',' << format_double(m[k]);
      out << ',' << format_double(q.x) << ',' << format_double(q.y) << ','
          << format_double(q.alpha) << '\n';
    }
  };
  for (std::size_t i = 0; i < report.pairs.size(); ++i) {
    emit(i, "pre", report.pre_trajectories[i]);
    emit(i, "post", report.post_trajectories[i]);
  }
  spit(dir / kTrajectories, out.str());
}

}  // namespace povatlas::artifacts
