// Small SVG document builder: axes, ticks, labels, rasters, polylines.

export function escapeXml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

export interface Frame {
  x: number;
  y: number;
  width: number;
  height: number;
  xRange: [number, number];
  yRange: [number, number];
}

export function xPixel(frame: Frame, value: number): number {
  const [lo, hi] = frame.xRange;
  return frame.x + ((value - lo) / (hi - lo)) * frame.width;
}

export function yPixel(frame: Frame, value: number): number {
  const [lo, hi] = frame.yRange;
  return frame.y + frame.height - ((value - lo) / (hi - lo)) * frame.height;
}

export function ticks(lo: number, hi: number, count = 5): number[] {
  return Array.from({ length: count }, (_, i) => lo + ((hi - lo) * i) / (count - 1));
}

function formatTick(value: number, span: number): string {
  const digits = Math.max(0, Math.ceil(-Math.log10(span / 4)) + 1);
  return value.toFixed(Math.min(digits, 6));
}

export class SvgDocument {
  private parts: string[] = [];

  constructor(readonly width: number, readonly height: number) {
    this.parts.push(
      `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" ` +
        `viewBox="0 0 ${width} ${height}" font-family="Helvetica, Arial, sans-serif">`,
      `<rect width="${width}" height="${height}" fill="white"/>`,
    );
  }

  raw(fragment: string): void {
    this.parts.push(fragment);
  }

  text(
    x: number,
    y: number,
    content: string,
    options: { size?: number; anchor?: string; rotate?: number } = {},
  ): void {
    const { size = 12, anchor = "middle", rotate } = options;
    const transform = rotate !== undefined
      ? ` transform="rotate(${rotate} ${x} ${y})"`
      : "";
    this.parts.push(
      `<text x="${x}" y="${y}" font-size="${size}" text-anchor="${anchor}"` +
        `${transform}>${escapeXml(content)}</text>`,
    );
  }

  line(x1: number, y1: number, x2: number, y2: number, stroke = "black", width = 1): void {
    this.parts.push(
      `<line x1="${x1}" y1="${y1}" x2="${x2}" y2="${y2}" stroke="${stroke}" ` +
        `stroke-width="${width}"/>`,
    );
  }

  polyline(points: [number, number][], stroke: string, width = 1.5): void {
    const path = points.map(([x, y]) => `${x.toFixed(2)},${y.toFixed(2)}`).join(" ");
    this.parts.push(
      `<polyline points="${path}" fill="none" stroke="${stroke}" ` +
        `stroke-width="${width}"/>`,
    );
  }

  image(frame: Frame, pngBase64: string): void {
    this.parts.push(
      `<image x="${frame.x}" y="${frame.y}" width="${frame.width}" ` +
        `height="${frame.height}" preserveAspectRatio="none" ` +
        `href="data:image/png;base64,${pngBase64}"/>`,
    );
  }

  /** Frame border, ticks and numeric labels for both axes. */
  axes(frame: Frame, xLabel: string, yLabel: string): void {
    this.parts.push(
      `<rect x="${frame.x}" y="${frame.y}" width="${frame.width}" ` +
        `height="${frame.height}" fill="none" stroke="black"/>`,
    );
    const xSpan = frame.xRange[1] - frame.xRange[0];
    for (const value of ticks(frame.xRange[0], frame.xRange[1])) {
      const px = xPixel(frame, value);
      this.line(px, frame.y + frame.height, px, frame.y + frame.height + 4);
      this.text(px, frame.y + frame.height + 16, formatTick(value, xSpan), { size: 10 });
    }
    const ySpan = frame.yRange[1] - frame.yRange[0];
    for (const value of ticks(frame.yRange[0], frame.yRange[1])) {
      const py = yPixel(frame, value);
      this.line(frame.x - 4, py, frame.x, py);
      this.text(frame.x - 6, py + 3, formatTick(value, ySpan), {
        size: 10,
        anchor: "end",
      });
    }
    this.text(frame.x + frame.width / 2, frame.y + frame.height + 32, xLabel);
    this.text(frame.x - 46, frame.y + frame.height / 2, yLabel, { rotate: -90 });
  }

  render(): string {
    return [...this.parts, "</svg>", ""].join("\n");
  }
}
