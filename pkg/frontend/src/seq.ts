// Request sequencing: each logical slot (a tab's simulate, a panel's fit)
// owns one gate. Issue a number before firing the request; when the
// response lands, apply it only if the gate still accepts that number.
// Anything overtaken by a newer request is discarded.

export class SequenceGate {
  private issued = 0;

  issue(): number {
    return ++this.issued;
  }

  accept(seq: number): boolean {
    return seq === this.issued;
  }
}
