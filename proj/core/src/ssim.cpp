#include "svgdelta/ssim.hpp"

#include <cmath>
#include <vector>

#include "svgdelta/errors.hpp"

namespace svgdelta {

namespace {

constexpr int kWindow = 11;
constexpr double kSigma = 1.5;
const double kC1 = (0.01 * 255) * (0.01 * 255);
const double kC2 = (0.03 * 255) * (0.03 * 255);

std::vector<double> gaussian_kernel() {
    std::vector<double> k(kWindow);
    double sum = 0;
    for (int i = 0; i < kWindow; ++i) {
        const double d = i - (kWindow - 1) / 2.0;
        k[i] = std::exp(-(d * d) / (2 * kSigma * kSigma));
        sum += k[i];
    }
    for (double& v : k) v /= sum;
    return k;
}

std::vector<double> luma(const Framebuffer& fb) {
    std::vector<double> y(static_cast<std::size_t>(fb.width) * fb.height);
    for (std::size_t i = 0, p = 0; i < y.size(); ++i, p += 4)
        y[i] = 0.299 * fb.pixels[p] + 0.587 * fb.pixels[p + 1] + 0.114 * fb.pixels[p + 2];
    return y;
}

// Separable valid-region Gaussian filter: output is (w-10) x (h-10).
std::vector<double> blur_valid(const std::vector<double>& img, int w, int h,
                               const std::vector<double>& k) {
    const int ow = w - kWindow + 1;
    std::vector<double> horiz(static_cast<std::size_t>(ow) * h);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < ow; ++x) {
            double acc = 0;
            for (int i = 0; i < kWindow; ++i)
                acc += k[i] * img[static_cast<std::size_t>(y) * w + x + i];
            horiz[static_cast<std::size_t>(y) * ow + x] = acc;
        }
    }
    const int oh = h - kWindow + 1;
    std::vector<double> out(static_cast<std::size_t>(ow) * oh);
    for (int y = 0; y < oh; ++y) {
        for (int x = 0; x < ow; ++x) {
            double acc = 0;
            for (int i = 0; i < kWindow; ++i)
                acc += k[i] * horiz[static_cast<std::size_t>(y + i) * ow + x];
            out[static_cast<std::size_t>(y) * ow + x] = acc;
        }
    }
    return out;
}

double ssim_term(double mu1, double mu2, double m11, double m22, double m12) {
    const double mu1_sq = mu1 * mu1, mu2_sq = mu2 * mu2, mu1_mu2 = mu1 * mu2;
    const double sigma1_sq = m11 - mu1_sq;
    const double sigma2_sq = m22 - mu2_sq;
    const double sigma12 = m12 - mu1_mu2;
    return ((2 * mu1_mu2 + kC1) * (2 * sigma12 + kC2)) /
           ((mu1_sq + mu2_sq + kC1) * (sigma1_sq + sigma2_sq + kC2));
}

}  // namespace

double ssim(const Framebuffer& a, const Framebuffer& b) {
    if (a.width != b.width || a.height != b.height)
        throw DimensionMismatchError("ssim inputs are " + std::to_string(a.width) + "x" +
                                     std::to_string(a.height) + " vs " + std::to_string(b.width) +
                                     "x" + std::to_string(b.height));
    if (a.width <= 0 || a.height <= 0)
        throw DimensionMismatchError("ssim inputs are empty");

    const std::vector<double> y1 = luma(a);
    const std::vector<double> y2 = luma(b);
    const std::size_t n = y1.size();

    if (a.width < kWindow || a.height < kWindow) {
        // Image smaller than the window: single global window, uniform weights.
        double mu1 = 0, mu2 = 0, m11 = 0, m22 = 0, m12 = 0;
        for (std::size_t i = 0; i < n; ++i) {
            mu1 += y1[i];
            mu2 += y2[i];
            m11 += y1[i] * y1[i];
            m22 += y2[i] * y2[i];
            m12 += y1[i] * y2[i];
        }
        mu1 /= n, mu2 /= n, m11 /= n, m22 /= n, m12 /= n;
        return ssim_term(mu1, mu2, m11, m22, m12);
    }

    const std::vector<double> kernel = gaussian_kernel();
    std::vector<double> sq1(n), sq2(n), prod(n);
    for (std::size_t i = 0; i < n; ++i) {
        sq1[i] = y1[i] * y1[i];
        sq2[i] = y2[i] * y2[i];
        prod[i] = y1[i] * y2[i];
    }
    const std::vector<double> mu1 = blur_valid(y1, a.width, a.height, kernel);
    const std::vector<double> mu2 = blur_valid(y2, a.width, a.height, kernel);
    const std::vector<double> m11 = blur_valid(sq1, a.width, a.height, kernel);
    const std::vector<double> m22 = blur_valid(sq2, a.width, a.height, kernel);
    const std::vector<double> m12 = blur_valid(prod, a.width, a.height, kernel);

    double sum = 0;
    for (std::size_t i = 0; i < mu1.size(); ++i)
        sum += ssim_term(mu1[i], mu2[i], m11[i], m22[i], m12[i]);
    return sum / static_cast<double>(mu1.size());
}

double identity_score(const FrameSequence& original, const UpdateSequence& candidate) {
    if (candidate.update_count() != original.update_count())
        throw DimensionMismatchError("candidate has " + std::to_string(candidate.update_count()) +
                                     " updates, original has " +
                                     std::to_string(original.update_count()));
    const int w = static_cast<int>(original.viewport_w);
    const int h = static_cast<int>(original.viewport_h);

    const std::vector<Framebuffer> recon = render_sequence(candidate, w, h);
    double sum = 0;
    for (std::size_t t = 0; t < original.frames.size(); ++t) {
        const Framebuffer ref = rasterize(original.frames[t], w, h, kWhite);
        sum += ssim(ref, recon[t]);
    }
    return sum / static_cast<double>(original.frames.size());
}

}  // namespace svgdelta
