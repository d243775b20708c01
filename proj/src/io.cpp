#include "mocover/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace mocover {

using json = nlohmann::json;

std::string covering_to_json(const BoxCollection& covering) {
  json records = json::array();
  const Vector radius = 0.5 * covering.cell_width();
  const std::vector<double> radius_list(radius.data(), radius.data() + radius.size());
  for (std::size_t i = 0; i < covering.size(); ++i) {
    const Vector c = covering.cell_center(i);
    records.push_back({{"depth", covering.depth()},
                       {"cell_index", covering.cell_index(i)},
                       {"center", std::vector<double>(c.data(), c.data() + c.size())},
                       {"radius", radius_list}});
  }
  return records.dump() + "\n";
}

BoxCollection covering_from_json(std::string_view text, const std::optional<HyperBox>& root) {
  const json records = json::parse(text);
  if (!records.is_array()) throw std::invalid_argument("covering JSON must be an array");
  if (records.empty()) {
    if (!root) throw std::invalid_argument("empty covering JSON needs an explicit root");
    return BoxCollection(*root).with_keys({});
  }

  const int depth = records.front().at("depth").get<int>();
  std::optional<HyperBox> region = root;
  if (!region) {
    const auto& first = records.front();
    const auto center = first.at("center").get<std::vector<double>>();
    const auto radius = first.at("radius").get<std::vector<double>>();
    const auto index = first.at("cell_index").get<CellIndex>();
    const auto n = static_cast<Eigen::Index>(center.size());
    if (static_cast<Eigen::Index>(radius.size()) != n || static_cast<Eigen::Index>(index.size()) != n) {
      throw std::invalid_argument("covering JSON record has inconsistent lengths");
    }
    // splits per axis follow the cyclic schedule
    Vector lower(n), upper(n);
    for (Eigen::Index d = 0; d < n; ++d) {
      const int splits = depth / static_cast<int>(n) + (d < depth % n ? 1 : 0);
      const double width = 2.0 * radius[d];
      lower[d] = center[d] - radius[d] - static_cast<double>(index[d]) * width;
      upper[d] = lower[d] + std::ldexp(width, splits);
    }
    region = HyperBox::from_bounds(lower, upper);
  }

  std::vector<CellIndex> cells;
  cells.reserve(records.size());
  for (const auto& r : records) {
    if (r.at("depth").get<int>() != depth) throw std::invalid_argument("covering JSON mixes depths");
    cells.push_back(r.at("cell_index").get<CellIndex>());
  }
  return BoxCollection(*region, depth, cells);
}

std::string format_double(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

std::string report_to_csv(const RunReport& report) {
  bool with_reference = false;
  for (const auto& s : report.steps) with_reference = with_reference || s.hausdorff.has_value();
  std::ostringstream out;
  out << "depth,box_count,diameter,eval_count";
  if (with_reference) out << ",hausdorff_to_reference";
  out << "\n";
  for (const auto& s : report.steps) {
    out << s.depth << ',' << s.box_count << ',' << format_double(s.max_diameter) << ','
        << s.eval_count;
    if (with_reference) out << ',' << (s.hausdorff ? format_double(*s.hausdorff) : "");
    out << "\n";
  }
  return out.str();
}

namespace {

std::vector<std::string> split(std::string_view line, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  for (;;) {
    const auto pos = line.find(sep, start);
    parts.emplace_back(line.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

}  // namespace

RunReport report_from_csv(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("report CSV is empty");
  const auto header = split(line, ',');
  if (header.size() < 4 || header[0] != "depth" || header[1] != "box_count") {
    throw std::invalid_argument("report CSV has an unexpected header");
  }
  RunReport report;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto cols = split(line, ',');
    if (cols.size() != header.size()) throw std::invalid_argument("report CSV row has wrong width");
    StepRecord r;
    r.depth = std::stoi(cols[0]);
    r.box_count = std::stoull(cols[1]);
    r.max_diameter = std::stod(cols[2]);
    r.eval_count = std::stoull(cols[3]);
    if (cols.size() > 4 && !cols[4].empty()) r.hausdorff = std::stod(cols[4]);
    report.total_evals += r.eval_count;
    report.steps.push_back(r);
  }
  return report;
}

std::string residual_field_to_csv(const ResidualField& field) {
  std::ostringstream out;
  const auto n = field.points.empty() ? 0 : field.points.front().size();
  for (Eigen::Index d = 0; d < n; ++d) out << 'x' << (d + 1) << ',';
  out << "residual\n";
  for (std::size_t j = 0; j < field.points.size(); ++j) {
    for (Eigen::Index d = 0; d < n; ++d) out << format_double(field.points[j][d]) << ',';
    out << format_double(field.values[j]) << "\n";
  }
  return out.str();
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::filesystem::path& path, std::string_view content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << content;
}

}  // namespace mocover
