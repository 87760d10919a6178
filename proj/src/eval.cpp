#include "hinge/eval.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <tuple>

#include <json.hpp>

namespace hinge::eval {

namespace {

using Json = nlohmann::ordered_json;

constexpr const char* kEmptyCell = "\xe2\x80\x94";  // em dash, for empty table cells

std::string fixed(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

std::ofstream open_out(const std::string& dir, const std::string& name) {
  const std::string path = dir + "/" + name;
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path);
  return out;
}

std::optional<double> safe_pearson(const std::vector<double>& xs, const std::vector<double>& ys) {
  try {
    return pearson(xs, ys);
  } catch (const UndefinedCorrelation&) {
    return std::nullopt;
  }
}

Json optional_json(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

}  // namespace

double pearson(const std::vector<double>& xs, const std::vector<double>& ys) {
  if (xs.size() != ys.size()) throw UndefinedCorrelation("pearson: length mismatch");
  if (xs.size() < 2) throw UndefinedCorrelation("pearson: need at least two points");
  const double n = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double dx = xs[i] - mx;
    const double dy = ys[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) throw UndefinedCorrelation("pearson: zero variance");
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

std::string_view to_string(Metric metric) {
  switch (metric) {
    case Metric::Bleu: return "bleu";
    case Metric::Wer: return "wer";
    case Metric::Ter: return "ter";
    case Metric::Nist: return "nist";
    case Metric::Embed: return "embed";
  }
  return "bleu";
}

std::optional<double> metric_value(const metrics::SentenceScore& score, Metric metric) {
  switch (metric) {
    case Metric::Bleu: return score.bleu;
    case Metric::Wer: return score.wer;
    case Metric::Ter: return score.ter;
    case Metric::Nist: return score.nist;
    case Metric::Embed: return score.embed;
  }
  return std::nullopt;
}

std::optional<DedupMode> parse_dedup_mode(std::string_view name) {
  if (name == "per-rating") return DedupMode::PerRating;
  if (name == "mean-rounded") return DedupMode::MeanRounded;
  return std::nullopt;
}

std::string_view to_string(DedupMode mode) {
  return mode == DedupMode::PerRating ? "per-rating" : "mean-rounded";
}

std::vector<Observation> observations(const std::map<std::string, metrics::SentenceScore>& scores,
                                      const std::vector<RatingRecord>& ratings, DedupMode mode,
                                      std::size_t* unscored) {
  std::map<std::string, std::vector<int>> by_sentence;
  std::size_t dropped = 0;
  for (const auto& r : ratings) {
    if (r.scale != Scale::Quality) continue;
    if (!scores.count(r.sentence_id)) {
      ++dropped;
      continue;
    }
    by_sentence[r.sentence_id].push_back(r.value);
  }
  if (unscored) *unscored = dropped;

  std::vector<Observation> out;
  for (auto& [id, values] : by_sentence) {
    const auto& score = scores.at(id);
    if (mode == DedupMode::PerRating) {
      std::sort(values.begin(), values.end());
      for (int v : values) out.push_back({id, v, score});
    } else {
      long sum = 0;
      for (int v : values) sum += v;
      const long n = static_cast<long>(values.size());
      // floor(sum / n + 1/2) in integers
      const int rounded = static_cast<int>((2 * sum + n) / (2 * n));
      out.push_back({id, rounded, score});
    }
  }
  return out;
}

MeanTable mean_by_rating(const std::vector<Observation>& obs) {
  MeanTable table;
  std::array<std::array<double, kMetricCount>, 10> sums{};
  std::array<std::array<std::size_t, kMetricCount>, 10> defined{};
  for (std::size_t k = 0; k < table.rows.size(); ++k) table.rows[k].rating = static_cast<int>(k + 1);
  for (const auto& o : obs) {
    if (o.rating < 1 || o.rating > 10) continue;
    const auto k = static_cast<std::size_t>(o.rating - 1);
    ++table.rows[k].count;
    for (std::size_t m = 0; m < kMetricCount; ++m) {
      if (const auto v = metric_value(o.score, kMetrics[m])) {
        sums[k][m] += *v;
        ++defined[k][m];
      }
    }
  }
  for (std::size_t k = 0; k < table.rows.size(); ++k) {
    for (std::size_t m = 0; m < kMetricCount; ++m) {
      if (defined[k][m]) table.rows[k].means[m] = sums[k][m] / static_cast<double>(defined[k][m]);
    }
  }
  return table;
}

CorrelationReport bucket_correlations(const MeanTable& table) {
  CorrelationReport report{};
  for (std::size_t b = 0; b < kBuckets.size(); ++b) {
    for (std::size_t m = 0; m < kMetricCount; ++m) {
      std::vector<double> xs, ys;
      for (const auto& row : table.rows) {
        if (!kBuckets[b].contains(row.rating) || !row.means[m]) continue;
        xs.push_back(row.rating);
        ys.push_back(*row.means[m]);
      }
      report[b][m] = {safe_pearson(xs, ys), xs.size()};
    }
  }
  return report;
}

CorrelationReport observation_correlations(const std::vector<Observation>& obs) {
  CorrelationReport report{};
  for (std::size_t b = 0; b < kBuckets.size(); ++b) {
    for (std::size_t m = 0; m < kMetricCount; ++m) {
      std::vector<double> xs, ys;
      for (const auto& o : obs) {
        const auto v = metric_value(o.score, kMetrics[m]);
        if (!kBuckets[b].contains(o.rating) || !v) continue;
        xs.push_back(o.rating);
        ys.push_back(*v);
      }
      report[b][m] = {safe_pearson(xs, ys), xs.size()};
    }
  }
  return report;
}

Agreement agreement_of(const std::vector<std::pair<int, int>>& label_pairs) {
  Agreement a;
  for (const auto& [x, y] : label_pairs) {
    if (x != y) {
      ++a.disagree;
    } else if (x == 1) {
      ++a.correct_agree;
    } else {
      ++a.incorrect_agree;
    }
  }
  return a;
}

double Histogram::high_disagreement() const {
  if (total == 0) return 0.0;
  std::size_t high = 0;
  for (std::size_t d = kHighDisagreement; d < counts.size(); ++d) high += counts[d];
  return static_cast<double>(high) / static_cast<double>(total);
}

Histogram histogram_of(const std::vector<std::pair<int, int>>& quality_pairs) {
  Histogram h;
  for (const auto& [x, y] : quality_pairs) {
    const auto d = static_cast<std::size_t>(std::abs(x - y));
    if (d >= h.counts.size()) throw std::invalid_argument("rating difference out of range");
    ++h.counts[d];
    ++h.total;
  }
  return h;
}

PairedRatings paired_ratings(const std::vector<RatingRecord>& ratings, Scale scale) {
  std::map<std::string, std::vector<int>> by_sentence;
  for (const auto& r : ratings) {
    if (r.scale == scale) by_sentence[r.sentence_id].push_back(r.value);
  }
  PairedRatings out;
  for (auto& [id, values] : by_sentence) {
    const auto method = method_of_sentence_id(id);
    if (values.size() != 2 || !method) {
      ++out.excluded;
      continue;
    }
    std::sort(values.begin(), values.end());
    out.per_method[*method].emplace_back(values[0], values[1]);
  }
  return out;
}

AgreementReport agreement_table(const std::vector<RatingRecord>& ratings) {
  const auto paired = paired_ratings(ratings, Scale::Label);
  AgreementReport report;
  report.excluded = paired.excluded;
  for (const auto& [method, pairs] : paired.per_method) report.per_method[method] = agreement_of(pairs);
  return report;
}

HistogramReport disagreement_histogram(const std::vector<RatingRecord>& ratings) {
  const auto paired = paired_ratings(ratings, Scale::Quality);
  HistogramReport report;
  report.excluded = paired.excluded;
  for (const auto& [method, pairs] : paired.per_method) report.per_method[method] = histogram_of(pairs);
  return report;
}

std::vector<RaterMean> dcm_ra_summary(const std::vector<RatingRecord>& ratings) {
  std::map<std::pair<Scale, std::string>, std::pair<long, std::size_t>> sums;
  for (const auto& r : ratings) {
    if (r.scale != Scale::DCM && r.scale != Scale::RA) continue;
    auto& s = sums[{r.scale, r.rater_id}];
    s.first += r.value;
    ++s.second;
  }
  std::vector<RaterMean> out;
  for (Scale scale : {Scale::DCM, Scale::RA}) {
    for (const auto& [key, s] : sums) {
      if (key.first != scale) continue;
      out.push_back({scale, key.second, static_cast<double>(s.first) / static_cast<double>(s.second), s.second});
    }
  }
  return out;
}

EvalReport evaluate(const std::map<std::string, metrics::SentenceScore>& scores,
                    const std::vector<RatingRecord>& ratings, const EvalOptions& options) {
  EvalReport report;
  report.options = options;
  const auto obs = observations(scores, ratings, options.dedup, &report.unscored_ratings);
  std::map<Method, std::vector<Observation>> by_method;
  for (const auto& o : obs) {
    if (const auto m = method_of_sentence_id(o.sentence_id)) {
      by_method[*m].push_back(o);
    } else {
      ++report.unknown_method;
    }
  }
  for (const auto& [method, list] : by_method) {
    MethodAnalysis a;
    a.observations = list.size();
    a.means = mean_by_rating(list);
    a.correlations = options.per_observation ? observation_correlations(list) : bucket_correlations(a.means);
    report.methods.emplace(method, std::move(a));
  }
  report.agreement = agreement_table(ratings);
  report.histogram = disagreement_histogram(ratings);
  report.dcm_ra = dcm_ra_summary(ratings);
  return report;
}

void write_reports(const std::string& dir, const EvalReport& report) {
  {
    auto out = open_out(dir, "table2.tsv");
    out << "method\tcorrect_agree\tincorrect_agree\tdisagree\ttotal\n";
    for (const auto& [method, a] : report.agreement.per_method) {
      out << to_string(method) << '\t' << a.correct_agree << '\t' << a.incorrect_agree << '\t' << a.disagree << '\t'
          << a.total() << '\n';
    }
  }
  {
    auto out = open_out(dir, "table4.tsv");
    out << "method\trating\tcount";
    for (Metric m : kMetrics) out << '\t' << to_string(m);
    out << '\n';
    for (const auto& [method, a] : report.methods) {
      for (const auto& row : a.means.rows) {
        out << to_string(method) << '\t' << row.rating << '\t' << row.count;
        for (const auto& v : row.means) out << '\t' << (v ? fixed(*v, 4) : kEmptyCell);
        out << '\n';
      }
    }
  }
  {
    auto out = open_out(dir, "table5.tsv");
    out << "method\tbucket";
    for (Metric m : kMetrics) out << '\t' << to_string(m);
    out << '\n';
    for (const auto& [method, a] : report.methods) {
      for (std::size_t b = 0; b < kBuckets.size(); ++b) {
        out << to_string(method) << '\t' << kBuckets[b].name;
        for (const auto& e : a.correlations[b]) out << '\t' << (e.r ? fixed(*e.r, 3) : kEmptyCell);
        out << '\n';
      }
    }
  }
  {
    auto out = open_out(dir, "disagreement_hist.tsv");
    out << "method\tdifference\tcount\tfraction\n";
    for (const auto& [method, h] : report.histogram.per_method) {
      for (std::size_t d = 0; d < h.counts.size(); ++d) {
        const double frac = h.total ? static_cast<double>(h.counts[d]) / static_cast<double>(h.total) : 0.0;
        out << to_string(method) << '\t' << d << '\t' << h.counts[d] << '\t' << fixed(frac, 4) << '\n';
      }
      std::size_t high = 0;
      for (std::size_t d = kHighDisagreement; d < h.counts.size(); ++d) high += h.counts[d];
      out << to_string(method) << "\t>=" << kHighDisagreement << '\t' << high << '\t' << fixed(h.high_disagreement(), 4)
          << '\n';
    }
  }
  {
    auto out = open_out(dir, "dcm_ra.tsv");
    out << "scale\trater\tmean\tcount\n";
    for (const auto& r : report.dcm_ra) {
      out << to_string(r.scale) << '\t' << r.rater << '\t' << fixed(r.mean, 2) << '\t' << r.count << '\n';
    }
  }

  Json j;
  j["dedup_mode"] = to_string(report.options.dedup);
  j["correlation_points"] = report.options.per_observation ? "observation" : "rating-mean";
  j["unscored_ratings"] = report.unscored_ratings;
  j["unknown_method"] = report.unknown_method;
  Json methods = Json::object();
  for (const auto& [method, a] : report.methods) {
    Json mj;
    mj["observations"] = a.observations;
    Json rows = Json::array();
    for (const auto& row : a.means.rows) {
      Json rj;
      rj["rating"] = row.rating;
      rj["count"] = row.count;
      for (std::size_t m = 0; m < kMetricCount; ++m) rj[std::string(to_string(kMetrics[m]))] = optional_json(row.means[m]);
      rows.push_back(rj);
    }
    mj["means"] = rows;
    Json corr = Json::object();
    for (std::size_t b = 0; b < kBuckets.size(); ++b) {
      Json bj;
      for (std::size_t m = 0; m < kMetricCount; ++m) {
        bj[std::string(to_string(kMetrics[m]))] = {{"r", optional_json(a.correlations[b][m].r)},
                                                   {"samples", a.correlations[b][m].samples}};
      }
      corr[std::string(kBuckets[b].name)] = bj;
    }
    mj["correlations"] = corr;
    methods[std::string(to_string(method))] = mj;
  }
  j["methods"] = methods;

  Json agreement = Json::object();
  for (const auto& [method, a] : report.agreement.per_method) {
    agreement[std::string(to_string(method))] = {
        {"correct_agree", a.correct_agree}, {"incorrect_agree", a.incorrect_agree}, {"disagree", a.disagree}};
  }
  j["agreement"] = {{"per_method", agreement}, {"excluded", report.agreement.excluded}};

  Json hist = Json::object();
  for (const auto& [method, h] : report.histogram.per_method) {
    hist[std::string(to_string(method))] = {
        {"counts", h.counts}, {"total", h.total}, {"high_disagreement", h.high_disagreement()}};
  }
  j["disagreement"] = {{"per_method", hist}, {"excluded", report.histogram.excluded}};

  Json dcm = Json::array();
  for (const auto& r : report.dcm_ra) {
    dcm.push_back({{"scale", to_string(r.scale)}, {"rater", r.rater}, {"mean", r.mean}, {"count", r.count}});
  }
  j["dcm_ra"] = dcm;

  auto out = open_out(dir, "report.json");
  out << j.dump(2) << '\n';
}

}  // namespace hinge::eval
