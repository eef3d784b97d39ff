// Copyright 2026 The Spotbench Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "spotbench/annotations.h"

#include <algorithm>
#include <filesystem>
#include <set>

#include "spotbench/errors.h"
#include "spotbench/format.h"
#include "spotbench/text.h"

namespace spotbench::annot {
namespace {

namespace fs = std::filesystem;
using geom::Point2;
using geom::Polygon;

std::vector<std::string_view> Lines(std::string_view content) {
  if (content.rfind("\xEF\xBB\xBF", 0) == 0) content.remove_prefix(3);
  auto lines = Split(content, '\n');
  for (auto& l : lines) {
    if (!l.empty() && l.back() == '\r') l.remove_suffix(1);
  }
  return lines;
}

bool IsIgnoreText(std::string_view t, Format format) {
  t = Trim(t);
  if (t == kIgnoreSentinel) return true;
  return format == Format::kTotalText && t == "#";
}

// Builds an instance from raw coordinates; self-intersecting polygons are
// kept but forced to ignore.
TextInstance MakeInstance(std::vector<Point2> pts, std::string text, Format format,
                          const std::string& where, std::vector<std::string>& warnings,
                          std::size_t line) {
  std::optional<Polygon> poly;
  try {
    poly.emplace(std::move(pts));
  } catch (const ValidationError& e) {
    throw ParseError(where, line, e.what());
  }
  TextInstance inst{std::move(*poly), std::move(text)};
  inst.ignore = IsIgnoreText(inst.transcription, format);
  if (!inst.polygon.IsSimple()) {
    inst.polygon_simple = false;
    inst.ignore = true;
    warnings.push_back(where + ":" + std::to_string(line) +
                       ": self-intersecting polygon, instance marked ignore");
  }
  return inst;
}

std::vector<Point2> PairUp(const std::vector<double>& coords) {
  std::vector<Point2> pts;
  pts.reserve(coords.size() / 2);
  for (std::size_t i = 0; i + 1 < coords.size(); i += 2) {
    pts.push_back({coords[i], coords[i + 1]});
  }
  return pts;
}

// "c1,c2,...,cN,transcription" with exactly `n` leading coordinates; the
// transcription may itself contain commas.
std::pair<std::vector<double>, std::string> FixedCoordLine(
    std::string_view line, std::size_t n, const std::string& where, std::size_t lineno) {
  std::vector<double> coords;
  coords.reserve(n);
  std::size_t pos = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto comma = line.find(',', pos);
    if (comma == std::string_view::npos) {
      throw ParseError(where, lineno,
                       "expected " + std::to_string(n) + " coordinates, found " +
                           std::to_string(i));
    }
    double v = 0;
    if (!ParseReal(line.substr(pos, comma - pos), v)) {
      throw ParseError(where, lineno,
                       "coordinate " + std::to_string(i + 1) + " is not a number: '" +
                           std::string(Trim(line.substr(pos, comma - pos))) + "'");
    }
    coords.push_back(v);
    pos = comma + 1;
  }
  return {std::move(coords), std::string(Trim(line.substr(pos)))};
}

std::string StripCtwPrefix(std::string text) {
  if (text.rfind("####", 0) == 0) text.erase(0, 4);
  return text;
}

std::vector<double> NumberList(std::string_view body, const std::string& where,
                               std::size_t lineno) {
  std::vector<double> out;
  std::size_t i = 0;
  while (i < body.size()) {
    while (i < body.size() && (body[i] == ' ' || body[i] == ',' || body[i] == '\t')) ++i;
    if (i >= body.size()) break;
    std::size_t j = i;
    while (j < body.size() && body[j] != ' ' && body[j] != ',' && body[j] != '\t') ++j;
    double v = 0;
    if (!ParseReal(body.substr(i, j - i), v)) {
      throw ParseError(where, lineno, "bad number '" + std::string(body.substr(i, j - i)) + "'");
    }
    out.push_back(v);
    i = j;
  }
  return out;
}

// Official Total-Text record:
//   x: [[115 503 494 115]], y: [[322 346 426 404]], ornt: [u'c'],
//   transcriptions: [u'nauGHTY']
TextInstance ParseTotalTextRecord(std::string_view rec, const std::string& where,
                                  std::size_t lineno, std::vector<std::string>& warnings) {
  auto bracket = [&](std::string_view key) {
    const auto k = rec.find(key);
    if (k == std::string_view::npos) {
      throw ParseError(where, lineno, "missing '" + std::string(key) + "'");
    }
    const auto open = rec.find("[[", k);
    const auto close = rec.find("]]", open);
    if (open == std::string_view::npos || close == std::string_view::npos) {
      throw ParseError(where, lineno, "malformed '" + std::string(key) + "' list");
    }
    return NumberList(rec.substr(open + 2, close - open - 2), where, lineno);
  };
  const auto xs = bracket("x:");
  const auto ys = bracket("y:");
  if (xs.size() != ys.size()) {
    throw ParseError(where, lineno, "x and y lists differ in length");
  }
  std::string text;
  const auto t = rec.find("transcriptions:");
  if (t == std::string_view::npos) {
    throw ParseError(where, lineno, "missing 'transcriptions:'");
  }
  auto open = rec.find('[', t);
  const auto close = rec.rfind(']');
  if (open == std::string_view::npos || close == std::string_view::npos || close < open) {
    throw ParseError(where, lineno, "malformed transcription");
  }
  std::string_view body = Trim(rec.substr(open + 1, close - open - 1));
  if (!body.empty() && body[0] == 'u') body.remove_prefix(1);
  if (body.size() >= 2 && (body[0] == '\'' || body[0] == '"') && body.back() == body[0]) {
    body = body.substr(1, body.size() - 2);
  }
  text = std::string(body);
  std::vector<Point2> pts;
  for (std::size_t i = 0; i < xs.size(); ++i) pts.push_back({xs[i], ys[i]});
  return MakeInstance(std::move(pts), std::move(text), Format::kTotalText, where,
                      warnings, lineno);
}

// Variable-length "x1,y1,...,xn,yn,text": the longest even run of leading
// numeric fields is the polygon.
TextInstance ParseFreeCoordLine(std::string_view line, Format format,
                                const std::string& where, std::size_t lineno,
                                std::vector<std::string>& warnings) {
  const auto fields = Split(line, ',');
  std::size_t numeric = 0;
  std::vector<double> coords;
  for (const auto& f : fields) {
    double v = 0;
    if (!ParseReal(f, v)) break;
    coords.push_back(v);
    ++numeric;
  }
  if (numeric == fields.size()) --numeric;  // last field is the text
  numeric -= numeric % 2;
  coords.resize(numeric);
  if (numeric < 6) throw ParseError(where, lineno, "fewer than 3 points");
  std::size_t offset = 0;
  for (std::size_t i = 0; i < numeric; ++i) offset += fields[i].size() + 1;
  std::string text = StripCtwPrefix(std::string(Trim(line.substr(offset))));
  return MakeInstance(PairUp(coords), std::move(text), format, where, warnings, lineno);
}

std::string ImageIdFromPath(const fs::path& p) {
  std::string stem = p.stem().string();
  if (stem.rfind("gt_", 0) == 0) stem.erase(0, 3);
  return stem;
}

std::vector<Point2> PointList(const Json& arr, const std::string& where,
                              std::size_t lineno, const char* field) {
  if (!arr.is_array()) {
    throw ParseError(where, lineno, std::string("'") + field + "' must be an array");
  }
  std::vector<Point2> pts;
  for (const auto& p : arr) {
    if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number()) {
      throw ParseError(where, lineno,
                       std::string("'") + field + "' entries must be [x, y] pairs");
    }
    pts.push_back({p[0].get<double>(), p[1].get<double>()});
  }
  return pts;
}

void WritePoints(std::string& out, const std::vector<Point2>& pts) {
  out += '[';
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (i) out += ',';
    out += '[';
    out += FormatFixed(pts[i].x, 6);
    out += ',';
    out += FormatFixed(pts[i].y, 6);
    out += ']';
  }
  out += ']';
}

std::string JsonString(const std::string& s) {
  return Json(s).dump(-1, ' ', false, Json::error_handler_t::replace);
}

void WriteExtra(std::string& out, const Json& extra) {
  for (auto it = extra.begin(); it != extra.end(); ++it) {
    out += ',';
    out += JsonString(it.key());
    out += ':';
    out += it.value().dump(-1, ' ', false, Json::error_handler_t::replace);
  }
}

Json ExtraFields(const Json& obj, std::initializer_list<std::string_view> known) {
  Json extra = Json::object();
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (std::find(known.begin(), known.end(), it.key()) == known.end()) {
      extra[it.key()] = it.value();
    }
  }
  return extra;
}

Json ParseJsonLine(std::string_view line, const std::string& where, std::size_t lineno) {
  try {
    Json j = Json::parse(line);
    if (!j.is_object()) throw ParseError(where, lineno, "record is not a JSON object");
    return j;
  } catch (const Json::parse_error& e) {
    throw ParseError(where, lineno, std::string("invalid JSON: ") + e.what());
  }
}

}  // namespace

ValidationConfig Ctw1500ValidationConfig() {
  ValidationConfig cfg;
  cfg.max_text_length = 100;
  return cfg;
}

Format ParseFormat(std::string_view tag) {
  if (tag == "icdar15") return Format::kIcdar15;
  if (tag == "totaltext") return Format::kTotalText;
  if (tag == "ctw1500") return Format::kCtw1500;
  if (tag == "bezier-synthtext") return Format::kBezierSynthText;
  if (tag == "canonical") return Format::kCanonical;
  throw ArgumentError("unknown annotation format '" + std::string(tag) +
                      "' (expected icdar15, totaltext, ctw1500, bezier-synthtext, canonical)");
}

std::string_view FormatName(Format f) {
  switch (f) {
    case Format::kIcdar15: return "icdar15";
    case Format::kTotalText: return "totaltext";
    case Format::kCtw1500: return "ctw1500";
    case Format::kBezierSynthText: return "bezier-synthtext";
    case Format::kCanonical: return "canonical";
  }
  return "unknown";
}

ImageAnnotations ParseImageText(std::string_view content, Format format,
                                const std::string& image_id,
                                const std::string& where,
                                std::vector<std::string>& warnings,
                                const ParseOptions& opts) {
  if (format == Format::kCanonical) {
    throw ArgumentError("canonical records are parsed per dataset, not per image");
  }
  ImageAnnotations img;
  img.image_id = image_id;
  const auto lines = Lines(content);

  if (format == Format::kTotalText) {
    std::string record;
    std::size_t record_line = 0;
    auto flush = [&] {
      if (record.empty()) return;
      img.instances.push_back(ParseTotalTextRecord(record, where, record_line, warnings));
      record.clear();
    };
    for (std::size_t i = 0; i < lines.size(); ++i) {
      const auto line = Trim(lines[i]);
      if (line.empty()) continue;
      if (line.rfind("x:", 0) == 0) {
        flush();
        record = std::string(line);
        record_line = i + 1;
      } else if (!record.empty()) {
        record += ' ';
        record += line;
      } else {
        img.instances.push_back(
            ParseFreeCoordLine(line, format, where, i + 1, warnings));
      }
    }
    flush();
    return img;
  }

  for (std::size_t i = 0; i < lines.size(); ++i) {
    const auto line = Trim(lines[i]);
    if (line.empty()) continue;
    const std::size_t lineno = i + 1;
    switch (format) {
      case Format::kIcdar15: {
        auto [coords, text] = FixedCoordLine(line, 8, where, lineno);
        img.instances.push_back(
            MakeInstance(PairUp(coords), std::move(text), format, where, warnings, lineno));
        break;
      }
      case Format::kCtw1500: {
        auto [coords, text] = FixedCoordLine(line, 28, where, lineno);
        img.instances.push_back(MakeInstance(PairUp(coords), StripCtwPrefix(text), format,
                                             where, warnings, lineno));
        break;
      }
      case Format::kBezierSynthText: {
        auto [coords, text] = FixedCoordLine(line, 16, where, lineno);
        const auto pts = PairUp(coords);
        geom::BezierPair bp;
        std::copy(pts.begin(), pts.begin() + 4, bp.top.begin());
        std::copy(pts.begin() + 4, pts.end(), bp.bottom.begin());
        std::vector<Point2> poly;
        try {
          poly = geom::BezierPairToPolygon(bp, opts.bezier_samples).vertices();
        } catch (const ValidationError& e) {
          throw ParseError(where, lineno, e.what());
        }
        img.instances.push_back(
            MakeInstance(std::move(poly), std::move(text), format, where, warnings, lineno));
        break;
      }
      default:
        break;
    }
  }
  return img;
}

GroundTruth ParseCanonicalGroundTruth(std::string_view content, const std::string& where) {
  GroundTruth gt;
  std::set<std::string> seen;
  const auto lines = Lines(content);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const auto line = Trim(lines[i]);
    if (line.empty()) continue;
    const std::size_t lineno = i + 1;
    const Json j = ParseJsonLine(line, where, lineno);
    ImageAnnotations img;
    if (!j.contains("image_id") || !j["image_id"].is_string() ||
        j["image_id"].get<std::string>().empty()) {
      throw ParseError(where, lineno, "missing or empty 'image_id'");
    }
    img.image_id = j["image_id"].get<std::string>();
    if (!seen.insert(img.image_id).second) {
      throw ParseError(where, lineno, "duplicate image_id '" + img.image_id + "'");
    }
    for (const char* dim : {"width", "height"}) {
      if (!j.contains(dim) || j[dim].is_null()) continue;
      if (!j[dim].is_number_integer()) {
        throw ParseError(where, lineno, std::string("'") + dim + "' must be an integer");
      }
      (std::string_view(dim) == "width" ? img.width : img.height) = j[dim].get<int>();
    }
    if (!j.contains("instances") || !j["instances"].is_array()) {
      throw ParseError(where, lineno, "missing 'instances' array");
    }
    for (const auto& ji : j["instances"]) {
      if (!ji.is_object()) throw ParseError(where, lineno, "instance is not an object");
      if (!ji.contains("polygon")) throw ParseError(where, lineno, "instance missing 'polygon'");
      if (!ji.contains("text") || !ji["text"].is_string()) {
        throw ParseError(where, lineno, "instance missing string 'text'");
      }
      TextInstance inst = MakeInstance(PointList(ji["polygon"], where, lineno, "polygon"),
                                       ji["text"].get<std::string>(), Format::kCanonical,
                                       where, gt.warnings, lineno);
      if (ji.contains("ignore")) {
        if (!ji["ignore"].is_boolean()) {
          throw ParseError(where, lineno, "'ignore' must be a boolean");
        }
        inst.ignore = inst.ignore || ji["ignore"].get<bool>();
      }
      if (ji.contains("lang") && !ji["lang"].is_null()) {
        if (!ji["lang"].is_string()) throw ParseError(where, lineno, "'lang' must be a string");
        inst.language_tag = ji["lang"].get<std::string>();
      }
      inst.extra = ExtraFields(ji, {"polygon", "text", "ignore", "lang"});
      img.instances.push_back(std::move(inst));
    }
    img.extra = ExtraFields(j, {"image_id", "width", "height", "instances"});
    gt.images.push_back(std::move(img));
  }
  return gt;
}

GroundTruth ParseGroundTruth(const std::string& path, Format format,
                             const ParseOptions& opts) {
  std::error_code ec;
  if (!fs::exists(path, ec)) throw IoError("no such file or directory: " + path);
  if (format == Format::kCanonical) {
    if (fs::is_directory(path)) {
      throw ArgumentError("canonical ground truth must be a single JSONL file");
    }
    return ParseCanonicalGroundTruth(ReadFile(path), path);
  }
  std::vector<fs::path> files;
  if (fs::is_directory(path)) {
    for (const auto& entry : fs::directory_iterator(path)) {
      if (entry.is_regular_file() && entry.path().extension() == ".txt") {
        files.push_back(entry.path());
      }
    }
    std::sort(files.begin(), files.end());
  } else {
    files.push_back(path);
  }
  GroundTruth gt;
  std::set<std::string> seen;
  for (const auto& f : files) {
    const std::string id = ImageIdFromPath(f);
    if (!seen.insert(id).second) {
      throw ParseError(f.string(), 0, "duplicate image_id '" + id + "'");
    }
    gt.images.push_back(
        ParseImageText(ReadFile(f.string()), format, id, f.string(), gt.warnings, opts));
  }
  return gt;
}

std::string WriteCanonicalGroundTruth(const std::vector<ImageAnnotations>& images) {
  std::string out;
  for (const auto& img : images) {
    out += "{\"image_id\":";
    out += JsonString(img.image_id);
    if (img.width) out += ",\"width\":" + std::to_string(*img.width);
    if (img.height) out += ",\"height\":" + std::to_string(*img.height);
    out += ",\"instances\":[";
    for (std::size_t i = 0; i < img.instances.size(); ++i) {
      const auto& inst = img.instances[i];
      if (i) out += ',';
      out += "{\"polygon\":";
      WritePoints(out, inst.polygon.vertices());
      out += ",\"text\":";
      out += JsonString(inst.transcription);
      out += ",\"ignore\":";
      out += inst.ignore ? "true" : "false";
      if (inst.language_tag) {
        out += ",\"lang\":";
        out += JsonString(*inst.language_tag);
      }
      WriteExtra(out, inst.extra);
      out += '}';
    }
    out += ']';
    WriteExtra(out, img.extra);
    out += "}\n";
  }
  return out;
}

Predictions ParsePredictionsText(std::string_view content, const std::string& where) {
  Predictions result;
  const auto lines = Lines(content);
  std::size_t record = 0;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const auto line = Trim(lines[i]);
    if (line.empty()) continue;
    ++record;
    const std::size_t lineno = i + 1;
    const Json j = ParseJsonLine(line, where, lineno);
    auto fail = [&](const std::string& why) {
      throw ParseError(where, lineno, "record " + std::to_string(record) + ": " + why);
    };
    if (!j.contains("image_id") || !j["image_id"].is_string() ||
        j["image_id"].get<std::string>().empty()) {
      fail("missing or empty 'image_id'");
    }
    if (!j.contains("polygon")) fail("missing 'polygon'");
    if (!j.contains("text") || !j["text"].is_string()) fail("missing string 'text'");
    if (!j.contains("score") || !j["score"].is_number()) fail("missing numeric 'score'");
    const double score = j["score"].get<double>();
    if (!(score >= 0.0 && score <= 1.0)) fail("score outside [0, 1]");
    std::vector<Point2> pts = PointList(j["polygon"], where, lineno, "polygon");
    std::optional<Polygon> poly;
    try {
      poly.emplace(std::move(pts));
    } catch (const ValidationError& e) {
      fail(e.what());
    }
    SpottingPrediction p{std::move(*poly), j["text"].get<std::string>(), score};
    if (j.contains("control_points") && !j["control_points"].is_null()) {
      p.control_points = PointList(j["control_points"], where, lineno, "control_points");
    }
    if (!p.polygon.IsSimple()) {
      p.polygon_simple = false;
      result.warnings.push_back(where + ":" + std::to_string(lineno) +
                                ": self-intersecting prediction polygon, overlaps nothing");
    }
    p.extra = ExtraFields(j, {"image_id", "polygon", "text", "score", "control_points"});
    result.by_image[j["image_id"].get<std::string>()].push_back(std::move(p));
  }
  return result;
}

Predictions ParsePredictions(const std::string& path) {
  return ParsePredictionsText(ReadFile(path), path);
}

std::string WritePredictions(const PredictionSet& preds) {
  std::string out;
  for (const auto& [image_id, list] : preds) {
    for (const auto& p : list) {
      out += "{\"image_id\":";
      out += JsonString(image_id);
      out += ",\"polygon\":";
      WritePoints(out, p.polygon.vertices());
      out += ",\"text\":";
      out += JsonString(p.text);
      out += ",\"score\":";
      out += FormatFixed(p.score, 6);
      if (p.control_points) {
        out += ",\"control_points\":";
        WritePoints(out, *p.control_points);
      }
      WriteExtra(out, p.extra);
      out += "}\n";
    }
  }
  return out;
}

std::vector<std::string> ValidatePredictions(const PredictionSet& preds,
                                             const ValidationConfig& cfg) {
  std::vector<std::string> warnings;
  for (const auto& [image_id, list] : preds) {
    if (static_cast<int>(list.size()) > cfg.max_queries_per_image) {
      warnings.push_back(image_id + ": " + std::to_string(list.size()) +
                         " predictions exceed max_queries_per_image=" +
                         std::to_string(cfg.max_queries_per_image));
    }
    for (std::size_t i = 0; i < list.size(); ++i) {
      const auto& p = list[i];
      const std::size_t len = text::CodePointLength(p.text);
      if (static_cast<int>(len) > cfg.max_text_length) {
        warnings.push_back(image_id + "[" + std::to_string(i) + "]: text length " +
                           std::to_string(len) + " exceeds max_text_length=" +
                           std::to_string(cfg.max_text_length));
      }
      if (p.control_points &&
          static_cast<int>(p.control_points->size()) != cfg.control_points_per_instance) {
        warnings.push_back(image_id + "[" + std::to_string(i) + "]: " +
                           std::to_string(p.control_points->size()) +
                           " control points, expected " +
                           std::to_string(cfg.control_points_per_instance));
      }
    }
  }
  return warnings;
}

DatasetStats ComputeDatasetStats(const std::vector<ImageAnnotations>& images) {
  if (images.empty()) throw ArgumentError("dataset has no images");
  DatasetStats s;
  s.images = static_cast<int>(images.size());
  for (const auto& img : images) {
    for (const auto& inst : img.instances) {
      ++s.instances;
      if (inst.ignore) ++s.ignored;
    }
  }
  s.words_per_image = static_cast<double>(s.instances - s.ignored) / s.images;
  return s;
}

}  // namespace spotbench::annot
